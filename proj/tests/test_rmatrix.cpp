#include <gtest/gtest.h>

#include "dsr/rmatrix.hpp"

using namespace dsr;

namespace {
RMatrix coxeter_r(int l) {
  auto d = build_type_a(l);
  return RMatrix::from_theta(d, coxeter_operator(d).matrix);
}
}  // namespace

TEST(RMatrix, RankOneKillsCartan) {
  auto r = coxeter_r(1);
  EXPECT_EQ(r.r0()(0, 0), cd(0.0));
  Mat h(2, 2);
  h << 1, 0, 0, -1;
  EXPECT_EQ(max_abs(r.apply(h)), 0.0);
  Mat e = Mat::Zero(2, 2);
  e(0, 1) = 1;
  EXPECT_EQ(max_abs(Mat(r.apply(e) + e)), 0.0);
}

TEST(RMatrix, RankTwoCartanEigenvalues) {
  auto r = coxeter_r(2);
  Eigen::ComplexEigenSolver<Mat> es(r.r0());
  for (int k = 0; k < 2; ++k) {
    const cd ev = es.eigenvalues()(k);
    EXPECT_NEAR(ev.real(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(ev.imag()), 1.0 / std::sqrt(3.0), 1e-12);
  }
}

TEST(RMatrix, RejectsBadTheta) {
  auto d = build_type_a(2);
  EXPECT_THROW(RMatrix::from_theta(d, Mat::Identity(2, 2)), std::invalid_argument);
  Mat t = 2.0 * Mat::Identity(2, 2);
  EXPECT_THROW(RMatrix::from_theta(d, t), std::invalid_argument);
}

TEST(MCYBE, CoxeterFamily) {
  for (int l = 1; l <= 3; ++l) EXPECT_LE(mcybe_residual(coxeter_r(l)), 1e-12) << l;
}

TEST(MCYBE, ZeroOperatorFails) {
  SlAlgebra alg(2);
  EXPECT_GT(mcybe_residual(alg, Mat::Zero(3, 3)), 0.5);
}

TEST(MCYBE, LeakPerturbationFails) {
  for (int l = 1; l <= 3; ++l) {
    auto r = coxeter_r(l);
    auto bad = r.perturbed(leak_perturbation(r.algebra(), 0.1));
    EXPECT_GT(mcybe_residual(bad), 1e-3);
    EXPECT_LE(skewness_residual(bad), 1e-14);
  }
}

TEST(MCYBE, ArbitraryCartanPartStillSatisfies) {
  auto d = build_type_a(2);
  Mat r0(2, 2);
  r0 << 0.3, -1.2, 0.7, 2.0;
  EXPECT_LE(mcybe_residual(RMatrix::from_r0(d, r0)), 1e-12);
}

TEST(DualBracket, Examples) {
  auto r = coxeter_r(1);
  Mat e = Mat::Zero(2, 2), f = Mat::Zero(2, 2), h(2, 2);
  e(0, 1) = 1;
  f(1, 0) = 1;
  h << 1, 0, 0, -1;
  EXPECT_EQ(max_abs(dual_bracket(r, e, f)), 0.0);
  EXPECT_EQ(max_abs(Mat(dual_bracket(r, h, e) + e)), 0.0);
  EXPECT_EQ(max_abs(dual_bracket(r, h, h)), 0.0);
}

TEST(BelavinDrinfeld, AllChecksPass) {
  for (int l = 1; l <= 3; ++l) {
    auto rep = bd_structure_checks(coxeter_r(l));
    for (const auto& it : rep.items) EXPECT_TRUE(it.pass) << l << " " << it.name << " " << it.residual;
  }
}

TEST(BelavinDrinfeld, InducedThetaIsInverseOfTheta) {
  auto c = compare_induced_theta(coxeter_r(2));
  EXPECT_LE(c.distance_to_theta_inverse, 1e-12);
  EXPECT_GT(c.distance_to_theta, 0.1);
  EXPECT_LE(compare_induced_theta(coxeter_r(1)).distance_to_theta, 1e-12);
}

TEST(BelavinDrinfeld, NonSkewCartanPartFailsSkewCheck) {
  auto d = build_type_a(2);
  auto rep = bd_structure_checks(RMatrix::from_r0(d, Mat::Identity(2, 2)));
  EXPECT_FALSE(rep.find("skew")->pass);
}

TEST(Double, EmbeddingsAndManinTriple) {
  for (int l = 1; l <= 2; ++l) {
    auto r = coxeter_r(l);
    auto rep = double_checks(r);
    for (const auto& it : rep.items) EXPECT_TRUE(it.pass) << l << " " << it.name << " " << it.residual;
  }
  auto r = coxeter_r(1);
  Mat e = Mat::Zero(2, 2);
  e(0, 1) = 1;
  auto x = embed_dual(r, e);
  EXPECT_EQ(max_abs(x.first), 0.0);
  EXPECT_EQ(max_abs(Mat(x.second + e)), 0.0);
}

TEST(Double, MembershipRejectsGenericPair) {
  auto r = coxeter_r(2);
  Mat a = Mat::Zero(3, 3), b = Mat::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = -1;
  EXPECT_GT(dual_membership_residual(r, {a, b}), 0.1);
  a(0, 2) = 1;
  EXPECT_GT(dual_membership_residual(r, {a, b}), 0.5);
}
