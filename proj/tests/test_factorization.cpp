#include <gtest/gtest.h>

#include "dsr/factorization.hpp"
#include "dsr/sampling.hpp"

using namespace dsr;

TEST(Gauss, Identity) {
  auto g = gauss_decompose(Mat::Identity(3, 3));
  EXPECT_EQ(max_abs(Mat(g.lower - Mat::Identity(3, 3))), 0.0);
  EXPECT_EQ(max_abs(Vec(g.diag - Vec::Ones(3))), 0.0);
  EXPECT_EQ(max_abs(Mat(g.upper_inv - Mat::Identity(3, 3))), 0.0);
}

TEST(Gauss, TwoByTwoHandElimination) {
  Mat l(2, 2);
  l << 2, 1, 0, 0.5;
  auto g = gauss_decompose(l);
  Mat u(2, 2);
  u << 1, 0.5, 0, 1;
  EXPECT_LE(max_abs(Mat(g.lower - Mat::Identity(2, 2))), 1e-15);
  EXPECT_LE(std::abs(g.diag(0) - 2.0), 1e-15);
  EXPECT_LE(std::abs(g.diag(1) - 0.5), 1e-15);
  EXPECT_LE(max_abs(Mat(g.upper_inv - u)), 1e-15);
}

TEST(Gauss, AntidiagonalIsOutsideBigCell) {
  Mat l(2, 2);
  l << 0, 1, -1, 0;
  try {
    gauss_decompose(l);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("minor 1"), std::string::npos);
  }
}

TEST(Twisted, IdentityGivesUnits) {
  auto ctx = PoissonContext::coxeter(2);
  auto tf = twisted_factorize(ctx, Mat::Identity(3, 3));
  EXPECT_EQ(max_abs(tf.x), 0.0);
  for (const Mat* m : {&tf.h_plus, &tf.h_minus, &tf.n_plus, &tf.n_minus})
    EXPECT_LE(max_abs(Mat(*m - Mat::Identity(3, 3))), 1e-15);
}

TEST(Twisted, RankOneExample) {
  auto ctx = PoissonContext::coxeter(1);
  Mat l(2, 2);
  l << 2, 1, 0, 0.5;
  auto tf = twisted_factorize(ctx, l);
  const double lg = std::log(2.0);
  EXPECT_LE(std::abs(tf.x_matrix(0, 0) - lg), 1e-15);
  EXPECT_LE(std::abs(tf.x_matrix(1, 1) + lg), 1e-15);
  EXPECT_LE(std::abs(tf.h_plus(0, 0) - std::sqrt(2.0)), 1e-14);
  EXPECT_LE(std::abs(tf.h_minus(0, 0) - 1 / std::sqrt(2.0)), 1e-14);
  Mat nm(2, 2);
  nm << 1, -1, 0, 1;
  EXPECT_LE(max_abs(Mat(tf.n_plus - Mat::Identity(2, 2))), 1e-15);
  EXPECT_LE(max_abs(Mat(tf.n_minus - nm)), 1e-14);
}

TEST(Twisted, ReassemblyAndRelationsOnRandomSamples) {
  Sampler rng(7);
  for (int l = 1; l <= 3; ++l) {
    auto ctx = PoissonContext::coxeter(l);
    const Mat s = coxeter_representative(l).matrix;
    const int n = l + 1;
    for (int k = 0; k < 100; ++k) {
      const Mat x = rng.group(n);
      auto tf = twisted_factorize(ctx, x);
      EXPECT_LE(max_abs(Mat(reassemble(ctx, tf) - x)), 1e-10 * std::max(1.0, max_abs(x)));
      EXPECT_LE(max_abs(Mat(tf.h_plus * tf.h_minus.inverse() - expm(tf.x_matrix))), 1e-12);
      EXPECT_LE(coxeter_h_relation_residual(tf, s), 1e-10);
      auto again = twisted_factorize(ctx, reassemble(ctx, tf));
      EXPECT_LE(max_abs(Mat(again.n_plus - tf.n_plus)), 1e-9);
      EXPECT_LE(max_abs(Mat(again.n_minus - tf.n_minus)), 1e-9);
      EXPECT_LE(max_abs(Vec(again.x - tf.x)), 1e-9);
      EXPECT_LE(max_abs(strictly_upper(tf.n_plus)), 0.0);
      EXPECT_LE(max_abs(strictly_lower(tf.n_minus)), 1e-15);
    }
  }
}

TEST(Twisted, TwistedContextReassembles) {
  Sampler rng(8);
  Vec d(3);
  d << 1.3, cd(0.7, 0.2), 1.0 / (1.3 * cd(0.7, 0.2));
  auto ctx = PoissonContext::coxeter_twisted(2, d);
  for (int k = 0; k < 20; ++k) {
    const Mat x = rng.group(3);
    auto tf = twisted_factorize(ctx, x);
    EXPECT_LE(max_abs(Mat(reassemble(ctx, tf) - x)), 1e-10);
  }
}

TEST(Twisted, DifferentialMatchesFiniteDifference) {
  Sampler rng(9);
  auto ctx = PoissonContext::coxeter(2);
  const Mat x = rng.group(3);
  const Mat dl = rng.traceless(3) * x;
  auto tf = twisted_factorize(ctx, x);
  auto df = factorization_differential(ctx, tf, dl);
  const double h = 1e-6;
  auto tp = twisted_factorize(ctx, Mat(x + h * dl)), tm = twisted_factorize(ctx, Mat(x - h * dl));
  EXPECT_LE(max_abs(Vec((tp.x - tm.x) / (2 * h) - df.dx)), 1e-8);
  EXPECT_LE(max_abs(Mat((tp.n_plus - tm.n_plus) / (2 * h) - df.dn_plus)), 1e-8);
  EXPECT_LE(max_abs(Mat((tp.gauss.lower - tm.gauss.lower) / (2 * h) - df.dlower)), 1e-8);
  EXPECT_LE(max_abs(Mat((tp.gauss.upper() - tm.gauss.upper()) / (2 * h) - df.dupper)), 1e-8);
}

TEST(Twisted, NegativeDiagonalRejected) {
  auto ctx = PoissonContext::coxeter(1);
  Mat l(2, 2);
  l << -1, 0, 0, -1;
  EXPECT_THROW(twisted_factorize(ctx, l), std::domain_error);
}
