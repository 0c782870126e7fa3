#include <gtest/gtest.h>

#include "dsr/heisenberg.hpp"
#include "dsr/sampling.hpp"

using namespace dsr;

namespace {
Vec twist_diag() {
  Vec d(3);
  d << 1.3, cd(0.7, 0.2), 1.0 / (1.3 * cd(0.7, 0.2));
  return d;
}

PolyFn pair_quadratic(Sampler& rng, int n) { return rng.quadratic(n, 2); }
}  // namespace

TEST(Double, Antisymmetry) {
  Sampler rng(21);
  auto ctx = PoissonContext::coxeter_twisted(2, twist_diag());
  for (auto kind : {DoubleBracket::heisenberg, DoubleBracket::lie_poisson})
    for (int k = 0; k < 20; ++k) {
      const PolyFn f = pair_quadratic(rng, 3), g = pair_quadratic(rng, 3);
      const DoublePoint d{rng.group(3), rng.group(3)};
      EXPECT_LE(std::abs(bracket_double(ctx, f, g, d, kind) + bracket_double(ctx, g, f, d, kind)), 1e-11);
    }
}

TEST(Double, Jacobi) {
  Sampler rng(22);
  std::vector<PoissonContext> ctxs{PoissonContext::coxeter(1), PoissonContext::coxeter(2)};
  for (const auto& ctx : ctxs) {
    const int n = ctx.n();
    for (auto kind : {DoubleBracket::heisenberg, DoubleBracket::lie_poisson}) {
      const DoublePoint d{rng.group(n), rng.group(n)};
      EXPECT_LE(jacobi_residual_double(ctx, pair_quadratic(rng, n), pair_quadratic(rng, n), pair_quadratic(rng, n),
                                       d, kind),
                1e-9);
    }
  }
}

TEST(Double, FactorizationsReassemble) {
  Sampler rng(23);
  std::vector<PoissonContext> ctxs{PoissonContext::coxeter(2), PoissonContext::coxeter_twisted(2, twist_diag())};
  for (const auto& ctx : ctxs)
    for (int k = 0; k < 20; ++k) {
      const DoublePoint d{rng.group(3, 0.5), rng.group(3, 0.5)};
      auto f = factorize_double(ctx, d);
      EXPECT_LE(f.reassembly_g, 1e-10);
      EXPECT_LE(f.reassembly_h, 1e-10);
      EXPECT_LE(gstar_membership_residual(ctx, f.g_plus, f.g_minus), 1e-10);
      EXPECT_LE(gstar_membership_residual(ctx, f.h_plus, f.h_minus), 1e-10);
    }
}

TEST(Double, ProjectionInvariantUnderLeftG) {
  Sampler rng(24);
  auto ctx = PoissonContext::coxeter_twisted(2, twist_diag());
  const DoublePoint d{rng.group(3), rng.group(3)};
  const Mat g = rng.group(3);
  const Mat p0 = double_projection(ctx, d), p1 = double_projection(ctx, left_action_G(ctx, g, d));
  EXPECT_LE(max_abs(Mat(p0 - p1)), 1e-11);
}

TEST(Double, PullbackPolynomialMatchesProjection) {
  Sampler rng(25);
  auto ctx = PoissonContext::coxeter_twisted(2, twist_diag());
  const PolyFn phi = rng.quadratic(3);
  const PolyFn pb = pullback_projection(ctx, phi);
  const DoublePoint d{rng.group(3), rng.group(3)};
  EXPECT_LE(std::abs(pb.evaluate(entries_of(d.x, d.y)) - phi.evaluate(entries_of(double_projection(ctx, d)))), 1e-11);
}

TEST(Double, ReductionRatioIsOneHalf) {
  Sampler rng(26);
  auto ctx = PoissonContext::coxeter(2);
  for (int k = 0; k < 5; ++k) {
    const DoublePoint d{rng.group(3), rng.group(3)};
    auto c = reduction_consistency(ctx, rng.quadratic(3), rng.quadratic(3), d);
    EXPECT_LE(std::abs(c.double_bracket - 0.5 * c.reduced_bracket), 1e-9);
  }
}

TEST(Double, MomentMapsOutsideLeafThrow) {
  auto ctx = PoissonContext::coxeter(1);
  Mat w(2, 2);
  w << 0, 1, -1, 0;
  const DoublePoint d{w, Mat::Identity(2, 2)};
  EXPECT_THROW(moment_maps(ctx, d), std::domain_error);
}
