#include <gtest/gtest.h>

#include "dsr/ds_reduction.hpp"
#include "dsr/sampling.hpp"

using namespace dsr;

namespace {
ConstraintSystem constraints_for(int l) {
  return ConstraintSystem(PoissonContext::coxeter(l), build_f_element(build_type_a(l)).f.matrix);
}

PoissonContext drinfeld_context(int l) {
  auto d = build_type_a(l);
  return PoissonContext(RMatrix::from_theta(d, Mat(-Mat::Identity(l, l))));
}

Mat slice_sample(Sampler& rng, int l, Mat* gauge = nullptr) {
  const int n = l + 1;
  Mat np = Mat::Identity(n, n);
  for (auto [i, j] : nprime_roots(l)) np(i, j) = rng.complex_unit();
  const Mat w = rng.upper_unipotent(n, 0.5);
  if (gauge) *gauge = w;
  return w * np * coxeter_inverse_representative(l).matrix * w.inverse();
}
}  // namespace

TEST(MuN, Examples) {
  auto ctx = PoissonContext::coxeter(2);
  EXPECT_LE(max_abs(Mat(mu_N(ctx, Mat::Identity(3, 3)) - Mat::Identity(3, 3))), 1e-15);
  Mat u(3, 3);
  u << 2, 1, 0.5, 0, 0.8, 0.3, 0, 0, 0.625;
  EXPECT_LE(max_abs(Mat(mu_N(ctx, u) - Mat::Identity(3, 3))), 1e-14);
}

TEST(MuN, DKReducesToMuN) {
  Sampler rng(41);
  auto c1 = PoissonContext::coxeter(1);
  const Mat l1 = rng.group(2, 0.5);
  const Mat k1 = solve_K_finite(build_type_a(1), coxeter_operator(build_type_a(1)).matrix).value;
  EXPECT_LE(max_abs(Mat(mu_N_DK(c1, k1, l1) - mu_N(c1, l1))), 1e-15);
  auto c2 = PoissonContext::coxeter(2);
  const Mat k2 = solve_K_finite(build_type_a(2), coxeter_operator(build_type_a(2)).matrix).value;
  const Mat l2 = rng.lower_unipotent(3) * rng.upper_unipotent(3);
  EXPECT_LE(max_abs(Mat(mu_N_DK(c2, k2, l2) - mu_N(c2, l2))), 1e-13);
}

TEST(MuN, LevelSetIsGaugeStable) {
  Sampler rng(42);
  auto cs = constraints_for(2);
  for (int k = 0; k < 5; ++k) {
    const Mat l = level_set_point(cs, rng.h_vector(2, 0.5), rng.upper_unipotent(3));
    EXPECT_LE(level_set_residual(cs, gauge_action(cs.ctx, rng.upper_unipotent(3, 0.3), l)), 1e-12);
  }
}

TEST(SolveK, FiniteCases) {
  auto d1 = build_type_a(1);
  auto k1 = solve_K_finite(d1, coxeter_operator(d1).matrix);
  EXPECT_EQ(max_abs(k1.value), 0.0);
  auto d2 = build_type_a(2);
  const Mat s = coxeter_operator(d2).matrix;
  auto k2 = solve_K_finite(d2, s);
  EXPECT_LE(k2.residual, 1e-14);
  EXPECT_LE(k2.commutation, 1e-14);
  Eigen::ComplexEigenSolver<Mat> es(k2.value);
  std::vector<double> im{es.eigenvalues()(0).imag(), es.eigenvalues()(1).imag()};
  std::sort(im.begin(), im.end());
  const double e = 1.0 / (4.0 * std::sqrt(3.0));
  EXPECT_LE(std::abs(im[0] + e), 1e-14);
  EXPECT_LE(std::abs(im[1] - e), 1e-14);
  auto k3 = solve_K_finite(d2, s, 0.3);
  EXPECT_LE(k3.residual, 1e-14);
  EXPECT_LE(k3.commutation, 1e-14);
}

TEST(FirstClass, OnLevelSet) {
  Sampler rng(43);
  for (int l = 1; l <= 2; ++l) {
    auto cs = constraints_for(l);
    for (int k = 0; k < 20; ++k) {
      const Mat pt = level_set_point(cs, rng.h_vector(l, 0.6), rng.upper_unipotent(l + 1));
      EXPECT_LE(level_set_residual(cs, pt), 1e-12);
      EXPECT_LE(first_class_residual(cs, pt), 1e-9);
      EXPECT_LE(first_class_residual_nplus(cs, pt), 1e-9);
    }
  }
}

TEST(FirstClass, GenericPointControl) {
  Sampler rng(44);
  auto cs = constraints_for(2);
  EXPECT_THROW(first_class_residual(cs, rng.group(3, 0.5)), std::domain_error);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) worst = std::max(worst, first_class_residual(cs, rng.group(3, 0.5), false));
  EXPECT_GT(worst, 1e-3);
}

TEST(FirstClass, DrinfeldStructureNeedsReversedK) {
  Sampler rng(45);
  auto d = build_type_a(2);
  const Mat k0 = solve_K_finite(d, coxeter_operator(d).matrix).value;
  const Mat f = build_f_element(d).f.matrix;
  ConstraintSystem good(drinfeld_context(2), f, Mat(-k0)), bad(drinfeld_context(2), f, k0);
  const Mat pg = level_set_point(good, rng.h_vector(2, 0.6), rng.upper_unipotent(3));
  const Mat pb = level_set_point(bad, rng.h_vector(2, 0.6), rng.upper_unipotent(3));
  EXPECT_LE(first_class_residual(good, pg), 1e-9);
  EXPECT_GT(first_class_residual(bad, pb), 1e-3);
}

TEST(DualPair, InvariantsCommuteWithConstraints) {
  Sampler rng(46);
  auto c1 = constraints_for(1);
  auto c2 = constraints_for(2);
  for (int k = 0; k < 50; ++k) EXPECT_LE(dual_pair_residual(c1, trace_poly(2), rng.group(2, 0.5)), 1e-10);
  for (int k = 0; k < 20; ++k) EXPECT_LE(dual_pair_residual(c2, trace_square_poly(3), rng.group(3, 0.5)), 1e-10);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) worst = std::max(worst, dual_pair_residual(c2, PolyFn::entry(0, 1, 3), rng.group(3, 0.5)));
  EXPECT_GT(worst, 1e-3);
}

TEST(SolveA, ConstantCase) {
  auto d = build_type_a(2);
  const Mat s = coxeter_operator(d).matrix;
  auto same = solve_A(d, s, s);
  EXPECT_EQ(max_abs(same.value), 0.0);
  auto a = solve_A(d, s, Mat(s * s));
  EXPECT_LE(a.residual, 1e-10);
  EXPECT_LE(induced_K_residual(d, a, induced_K(a)), 1e-10);
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_THROW(solve_A(d, s, x), std::invalid_argument);
}

TEST(SolveA, InducedKFromDrinfeldIsMinusK0) {
  auto d = build_type_a(2);
  const Mat s = coxeter_operator(d).matrix;
  auto a = solve_A(d, Mat(-Mat::Identity(2, 2)), s);
  EXPECT_LE(max_abs(Mat(induced_K(a) + solve_K_constant(s))), 1e-14);
}

TEST(SolveA, LoopModes) {
  auto d = build_type_a(2);
  const Mat s = coxeter_operator(d).matrix;
  DilationParam p(0.1);
  ModeFamily th, thp;
  for (int n = -8; n <= 8; ++n) {
    th[n] = p.power(n) * s;
    thp[n] = std::pow(cd(0.2), n) * Mat(s * s);
  }
  auto sol = solve_A_modes(d, th, thp, p, 8);
  EXPECT_TRUE(sol.failed_modes.empty());
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_LE(kernel_skew_residual(d, sol.kernel), 1e-12);
  EXPECT_LE(induced_K_modes_residual(d, th, thp, p, induced_K_modes(th, thp, p, sol.kernel)), 1e-10);
}

TEST(IsoMap, TrivialCases) {
  Sampler rng(47);
  auto d = build_type_a(2);
  const Mat s = coxeter_operator(d).matrix;
  auto ctx = PoissonContext::coxeter(2);
  const Mat l = rng.group(3, 0.5);
  EXPECT_LE(max_abs(Mat(iso_map(ctx, solve_A(d, s, s).value, l) - l)), 1e-15);
  auto a = solve_A(d, s, Mat(s * s));
  const Mat u = rng.lower_unipotent(3) * rng.upper_unipotent(3);
  EXPECT_LE(max_abs(Mat(iso_map(ctx, a.value, u) - u)), 1e-13);
}

TEST(IsoMap, PoissonTransport) {
  Sampler rng(48);
  auto d = build_type_a(2);
  const Mat s = coxeter_operator(d).matrix;
  auto a = solve_A(d, s, Mat(s * s));
  PoissonContext src(RMatrix::from_theta(d, s)), tgt(RMatrix::from_theta(d, Mat(s * s)));
  for (int k = 0; k < 30; ++k) {
    const Mat l = rng.group(3, 0.5);
    EXPECT_LE(iso_transport_residual(src, tgt, a.value, rng.quadratic(3), rng.quadratic(3), l), 1e-8);
    EXPECT_LE(iso_components_residual(src, tgt, a, l), 1e-10);
    EXPECT_LE(iso_roundtrip_residual(d, src, tgt, a, l), 1e-9);
  }
  double bad = 0.0;
  for (int k = 0; k < 5; ++k)
    bad = std::max(bad, iso_transport_residual(src, tgt, Mat(-a.value), rng.quadratic(3), rng.quadratic(3),
                                               rng.group(3, 0.5)));
  EXPECT_GT(bad, 1e-3);
}

TEST(Slice, RecoversGaugeAndDimension) {
  Sampler rng(49);
  for (int l = 1; l <= 3; ++l) {
    auto ctx = PoissonContext::coxeter(l);
    Mat w;
    const Mat pt = slice_sample(rng, l, &w);
    auto r = slice_and_miura_check(ctx, pt);
    EXPECT_EQ(r.nprime_dim, l);
    EXPECT_LE(max_abs(Mat(r.v - w)), 1e-10);
    EXPECT_LE(r.bracket_residual, 1e-8);
  }
}

TEST(Slice, PointOnSliceNeedsNoIterations) {
  auto ctx = PoissonContext::coxeter(2);
  Mat np = Mat::Identity(3, 3);
  for (auto [i, j] : nprime_roots(2)) np(i, j) = 0.3;
  auto r = slice_and_miura_check(ctx, Mat(np * coxeter_inverse_representative(2).matrix));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_LE(max_abs(Mat(r.v - Mat::Identity(3, 3))), 0.0);
}

TEST(Slice, DivergenceReported) {
  auto ctx = PoissonContext::coxeter(2);
  EXPECT_THROW(slice_and_miura_check(ctx, Mat::Identity(3, 3)), std::runtime_error);
}

TEST(Anz, SimpleRootRescaling) {
  Sampler rng(50);
  for (int l = 1; l <= 2; ++l) {
    auto d = build_type_a(l);
    const Mat k = solve_K_finite(d, coxeter_operator(d).matrix).value;
    auto ctx = drinfeld_context(l);
    for (int t = 0; t < 10; ++t) {
      auto c = anz_check(ctx, k, rng.group(l + 1, 0.5));
      EXPECT_LE(c.derived, 1e-10);
      if (l == 1) EXPECT_LE(c.printed, 1e-10);
    }
  }
  auto d = build_type_a(2);
  auto c = anz_check(drinfeld_context(2), solve_K_finite(d, coxeter_operator(d).matrix).value, rng.group(3, 0.5));
  EXPECT_GT(c.printed, 1e-6);
}
