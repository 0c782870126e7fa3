#include <gtest/gtest.h>

#include "dsr/polyfn.hpp"
#include "dsr/sampling.hpp"

using namespace dsr;

TEST(PolyFn, ArithmeticCancels) {
  const PolyFn x = PolyFn::variable(0), y = PolyFn::variable(1);
  const PolyFn p = (x + y) * (x - y) - (x * x - y * y);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(((x + y) * (x + y)).size(), 3u);
  EXPECT_EQ(((x + y) * (x + y)).degree(), 2);
}

TEST(PolyFn, EvaluateAndDerivative) {
  const PolyFn x = PolyFn::variable(0), y = PolyFn::variable(1);
  const PolyFn p = cd(2.0) * x * x * y + cd(0.0, 1.0) * y;
  const std::vector<cd> v{3.0, -2.0};
  EXPECT_EQ(p.evaluate(v), cd(-36.0, -2.0));
  EXPECT_EQ(p.derivative(0).evaluate(v), cd(-24.0));
  EXPECT_EQ(p.derivative(1).evaluate(v), cd(18.0, 1.0));
  const auto g = p.partials(v);
  EXPECT_EQ(g[0], cd(-24.0));
  EXPECT_EQ(g[1], cd(18.0, 1.0));
}

TEST(PolyFn, PartialsAgreeWithDerivative) {
  Sampler rng(31);
  const PolyFn p = rng.quadratic(3, 2);
  std::vector<cd> v(18);
  for (auto& c : v) c = rng.complex_unit();
  const auto g = p.partials(v);
  for (int k = 0; k < 18; ++k) EXPECT_LE(std::abs(g[size_t(k)] - p.derivative(k).evaluate(v)), 1e-13);
}

TEST(PolyFn, ComposeSubstitutes) {
  const PolyFn x = PolyFn::variable(0), y = PolyFn::variable(1);
  const PolyFn p = x * y + x;
  const PolyFn q = compose(p, {y + PolyFn(1.0), x});
  const std::vector<cd> v{2.0, 5.0};
  EXPECT_EQ(q.evaluate(v), p.evaluate({6.0, 2.0}));
}

TEST(PolyFn, AdjugateIsInverseOnSL) {
  Sampler rng(32);
  for (int n = 2; n <= 4; ++n) {
    const Mat g = rng.group(n);
    const auto e = entries_of(g);
    EXPECT_LE(std::abs(determinant_entries(e, n) - 1.0), 1e-12);
    const Mat a = matrix_from_entries(adjugate_entries(e, n), n);
    EXPECT_LE(max_abs(Mat(a * g - Mat::Identity(n, n))), 1e-12);
  }
}

TEST(PolyFn, PruneDropsSmallTerms) {
  PolyFn p = PolyFn::variable(0) + PolyFn(1e-16);
  p.prune(1e-14);
  EXPECT_EQ(p.size(), 1u);
}
