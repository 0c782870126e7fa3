#pragma once

// The twisted Heisenberg double G x G: brackets, factorizations, moment maps.

#include "dsr/poisson.hpp"

namespace dsr {

struct DoublePoint {
  Mat x;
  Mat y;
};

enum class DoubleBracket {
  lie_poisson,  // -1/2 <<r_d grad, grad>> + 1/2 <<r_d grad', grad'>>
  heisenberg,   //  1/2 <<r_d grad, grad>> + 1/2 <<sigma r_d grad', grad'>>
};

/// Coordinate operators for the double: r_d, its twist and the pairing.
class DoubleOperators {
 public:
  explicit DoubleOperators(const PoissonContext& ctx) {
    const auto& r = ctx.r();
    const auto& alg = ctx.algebra();
    const int d = alg.dim();
    rd_ = build_double_r(r);
    rds_ = rd_;
    rds_.topRightCorner(d, d) = -2.0 * ctx.sigma_inv_op() * r.op_plus();
    rds_.bottomLeftCorner(d, d) = 2.0 * r.op_minus() * ctx.sigma_op();
    Mat p = Mat::Zero(2 * d, 2 * d);
    p.topLeftCorner(d, d) = alg.gram();
    p.bottomRightCorner(d, d) = -alg.gram();
    form_rd_ = rd_.transpose() * p;
    form_rds_ = rds_.transpose() * p;
  }
  const Mat& rd() const { return rd_; }
  const Mat& rd_sigma() const { return rds_; }
  const Mat& form_rd() const { return form_rd_; }
  const Mat& form_rd_sigma() const { return form_rds_; }

 private:
  Mat rd_, rds_, form_rd_, form_rds_;
};

/// Gradient coordinates on d for a function of (x, y): (grad_x, -grad_y).
template <class T>
struct PairGradients {
  std::vector<T> left;
  std::vector<T> right;
};

inline PairGradients<cd> pair_gradients(const SlAlgebra& alg, const PolyFn& phi, const DoublePoint& d) {
  const int n = alg.n();
  const auto pt = entries_of(d.x, d.y);
  const auto gx = gradients(phi, pt, n, 0), gy = gradients(phi, pt, n, 1);
  PairGradients<cd> out;
  const Vec l1 = alg.coords(gx.left), l2 = alg.coords(gy.left), r1 = alg.coords(gx.right), r2 = alg.coords(gy.right);
  for (int a = 0; a < alg.dim(); ++a) out.left.push_back(l1(a)), out.right.push_back(r1(a));
  for (int a = 0; a < alg.dim(); ++a) out.left.push_back(-l2(a)), out.right.push_back(-r2(a));
  return out;
}

inline PairGradients<PolyFn> symbolic_pair_gradients(const SlAlgebra& alg, const PolyFn& phi) {
  auto gx = symbolic_gradients(alg, phi, 0), gy = symbolic_gradients(alg, phi, 1);
  PairGradients<PolyFn> out{gx.left, gx.right};
  for (auto& p : gy.left) out.left.push_back(-p);
  for (auto& p : gy.right) out.right.push_back(-p);
  return out;
}

template <class T>
T double_form(const DoubleOperators& ops, DoubleBracket kind, const PairGradients<T>& f, const PairGradients<T>& g) {
  if (kind == DoubleBracket::lie_poisson)
    return cd(-0.5) * bilinear(f.left, ops.form_rd(), g.left) + cd(0.5) * bilinear(f.right, ops.form_rd(), g.right);
  return cd(0.5) * bilinear(f.left, ops.form_rd(), g.left) + cd(0.5) * bilinear(f.right, ops.form_rd_sigma(), g.right);
}

inline cd bracket_double(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi, const DoublePoint& d,
                         DoubleBracket kind = DoubleBracket::heisenberg) {
  DoubleOperators ops(ctx);
  return double_form(ops, kind, pair_gradients(ctx.algebra(), phi, d), pair_gradients(ctx.algebra(), psi, d));
}

inline PolyFn symbolic_bracket_double(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi,
                                      DoubleBracket kind = DoubleBracket::heisenberg) {
  DoubleOperators ops(ctx);
  PolyFn out = double_form(ops, kind, symbolic_pair_gradients(ctx.algebra(), phi),
                           symbolic_pair_gradients(ctx.algebra(), psi));
  out.prune(1e-14);
  if (out.degree() > degree_cap) throw std::length_error("bracket exceeds the degree cap");
  return out;
}

inline double jacobi_residual_double(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi,
                                     const PolyFn& chi, const DoublePoint& d,
                                     DoubleBracket kind = DoubleBracket::heisenberg) {
  const cd v = bracket_double(ctx, phi, symbolic_bracket_double(ctx, psi, chi, kind), d, kind) +
               bracket_double(ctx, psi, symbolic_bracket_double(ctx, chi, phi, kind), d, kind) +
               bracket_double(ctx, chi, symbolic_bracket_double(ctx, phi, psi, kind), d, kind);
  return std::abs(v);
}

// ---- factorizations d = g (g*)^T = h* h^T with T = sigma^{-1} x id ----

struct DoubleFactorization {
  Mat g, h;
  Mat g_plus, g_minus;
  Mat h_plus, h_minus;
  double reassembly_g = 0.0;
  double reassembly_h = 0.0;
};

/// Distance of (a+, a-) from the dual group: triangularity and the Cartan relation.
inline double gstar_membership_residual(const PoissonContext& ctx, const Mat& ap, const Mat& am) {
  const auto& alg = ctx.algebra();
  const auto& r = ctx.r();
  double res = std::max(max_abs(strictly_upper(ap)), max_abs(strictly_lower(am)));
  const Vec xp = alg.h_coords(Mat(principal_log(ap.diagonal()).asDiagonal()));
  const Vec xm = alg.h_coords(Mat(principal_log(am.diagonal()).asDiagonal()));
  const Mat theta_r = r.r0_plus() * r.r0_minus().inverse();
  return std::max(res, max_abs(Vec(xp - theta_r * xm)));
}

inline DoubleFactorization factorize_double(const PoissonContext& ctx, const DoublePoint& d) {
  DoubleFactorization out;
  TwistedFactorization th, tg;
  try {
    th = twisted_factorize(ctx, Mat(ctx.sigma_group(d.x) * d.y.inverse()));
    tg = twisted_factorize(ctx.inverse_twist(), Mat(d.x.inverse() * d.y));
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string("outside principal leaf: ") + e.what());
  }
  out.h_plus = th.l_plus();
  out.h_minus = th.l_minus();
  out.h = out.h_minus.inverse() * d.y;
  out.g_plus = tg.l_plus().inverse();
  out.g_minus = tg.l_minus().inverse();
  out.g = d.y * tg.l_minus();
  const double sx = std::max(1.0, max_abs(d.x)), sy = std::max(1.0, max_abs(d.y));
  out.reassembly_g = std::max(max_abs(Mat(out.g * ctx.sigma_inv_group(out.g_plus) - d.x)) / sx,
                              max_abs(Mat(out.g * out.g_minus - d.y)) / sy);
  out.reassembly_h = std::max(max_abs(Mat(out.h_plus * ctx.sigma_inv_group(out.h) - d.x)) / sx,
                              max_abs(Mat(out.h_minus * out.h - d.y)) / sy);
  return out;
}

struct MomentMaps {
  std::pair<Mat, Mat> g_left;  // g*
  Mat gstar_left;              // h
  std::pair<Mat, Mat> g_right; // h*
  Mat gstar_right;             // g
};

inline MomentMaps moment_maps(const PoissonContext& ctx, const DoublePoint& d) {
  auto f = factorize_double(ctx, d);
  return {{f.g_plus, f.g_minus}, f.h, {f.h_plus, f.h_minus}, f.g};
}

/// p(x, y) = sigma(x) y^{-1}.
inline Mat double_projection(const PoissonContext& ctx, const DoublePoint& d) {
  return ctx.sigma_group(d.x) * d.y.inverse();
}

/// d' o d = d (d'^T)^{-1} for d' = (g, g) in the diagonal copy of G.
inline DoublePoint left_action_G(const PoissonContext& ctx, const Mat& g, const DoublePoint& d) {
  return {d.x * ctx.sigma_inv_group(g).inverse(), d.y * g.inverse()};
}

/// phi(sigma(x) adj(y)) as a polynomial on pairs; equals p*phi on SL x SL.
inline PolyFn pullback_projection(const PoissonContext& ctx, const PolyFn& phi) {
  const int n = ctx.n();
  std::vector<PolyFn> x(size_t(n * n)), y(size_t(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x[size_t(i * n + j)] = PolyFn::entry(i, j, n, 0);
      y[size_t(i * n + j)] = PolyFn::entry(i, j, n, 1);
    }
  const Mat& g0 = ctx.twist_element();
  const Mat g0i = g0.inverse();
  std::vector<PolyFn> sx(size_t(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const cd c = g0(i, a) * g0i(b, j);
          if (c != cd(0.0)) sx[size_t(i * n + j)] += c * x[size_t(a * n + b)];
        }
  return compose(phi, matmul_entries(sx, adjugate_entries(y, n), n));
}

struct ReductionComparison {
  cd double_bracket;
  cd reduced_bracket;
  double residual = 0.0;
};

inline ReductionComparison reduction_consistency(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi,
                                                 const DoublePoint& d) {
  ReductionComparison c;
  c.double_bracket = bracket_double(ctx, pullback_projection(ctx, phi), pullback_projection(ctx, psi), d);
  c.reduced_bracket = bracket_tau(ctx, phi, psi, double_projection(ctx, d));
  c.residual = std::abs(c.double_bracket - c.reduced_bracket);
  return c;
}

}  // namespace dsr
