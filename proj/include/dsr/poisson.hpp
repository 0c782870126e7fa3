#pragma once

// Gradients and the Poisson brackets on G and on its factorized form.

#include "dsr/factorization.hpp"
#include "dsr/polyfn.hpp"

#include <functional>

namespace dsr {

inline constexpr int degree_cap = 8;

struct Gradients {
  Mat left;
  Mat right;
};

/// Exact gradients of a polynomial in the entries of the slot-th matrix argument.
inline Gradients gradients(const PolyFn& phi, const std::vector<cd>& point, int n, int slot = 0) {
  const auto part = phi.partials(point);
  const Mat d = matrix_from_entries(part, n, slot);
  const Mat x = matrix_from_entries(point, n, slot);
  return {traceless(Mat(x * d.transpose())), traceless(Mat(d.transpose() * x))};
}

inline Gradients gradients(const PolyFn& phi, const Mat& x) {
  auto pt = entries_of(x);
  if (phi.variable_bound() > int(pt.size())) throw std::invalid_argument("function uses more than one matrix argument");
  return gradients(phi, pt, int(x.rows()));
}

inline Mat left_gradient(const PolyFn& phi, const Mat& x) { return gradients(phi, x).left; }
inline Mat right_gradient(const PolyFn& phi, const Mat& x) { return gradients(phi, x).right; }

/// Gradients of an arbitrary function from its directional derivative dL -> d phi.
inline Gradients gradients_from_differential(const SlAlgebra& alg, const Mat& l,
                                             const std::function<cd(const Mat&)>& dphi) {
  const int d = alg.dim();
  Vec vl(d), vr(d);
  for (int a = 0; a < d; ++a) {
    const Mat xi = alg.basis(a);
    vl(a) = dphi(Mat(xi * l));
    vr(a) = dphi(Mat(l * xi));
  }
  return {alg.gradient_from_functional(vl), alg.gradient_from_functional(vr)};
}

/// Symbolic coordinates of the left and right gradients (polynomials in the entries).
struct SymbolicGradients {
  std::vector<PolyFn> left;
  std::vector<PolyFn> right;
};

inline SymbolicGradients symbolic_gradients(const SlAlgebra& alg, const PolyFn& phi, int slot = 0) {
  const int n = alg.n();
  std::vector<PolyFn> x(size_t(n * n)), d(size_t(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x[size_t(i * n + j)] = PolyFn::entry(i, j, n, slot);
      d[size_t(i * n + j)] = phi.derivative(slot * n * n + i * n + j);
    }
  std::vector<PolyFn> xd(size_t(n * n)), dx(size_t(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        xd[size_t(i * n + j)] += x[size_t(i * n + k)] * d[size_t(j * n + k)];
        dx[size_t(i * n + j)] += d[size_t(k * n + i)] * x[size_t(k * n + j)];
      }
  return {alg.coords_of(xd), alg.coords_of(dx)};
}

/// <r a, b> + <r a', b'> - 2 <sigma r+ a', b> - 2 <r- sigma^{-1} a, b'> on coordinates.
template <class T>
T tau_form(const PoissonContext& ctx, const std::vector<T>& a, const std::vector<T>& ap, const std::vector<T>& b,
           const std::vector<T>& bp) {
  T out = bilinear(a, ctx.form_r(), b);
  out += bilinear(ap, ctx.form_r(), bp);
  out -= cd(2.0) * bilinear(ap, ctx.form_sigma_r_plus(), b);
  out -= cd(2.0) * bilinear(a, ctx.form_r_minus_sigma_inv(), bp);
  return out;
}

inline cd bracket_tau(const PoissonContext& ctx, const Gradients& f, const Gradients& g) {
  const auto& alg = ctx.algebra();
  return tau_form(ctx, to_std(alg.coords(f.left)), to_std(alg.coords(f.right)), to_std(alg.coords(g.left)),
                  to_std(alg.coords(g.right)));
}

inline cd bracket_tau(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi, const Mat& l) {
  return bracket_tau(ctx, gradients(phi, l), gradients(psi, l));
}

/// The bracket as a polynomial in the entries.
inline PolyFn symbolic_bracket_tau(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi) {
  const auto& alg = ctx.algebra();
  auto f = symbolic_gradients(alg, phi), g = symbolic_gradients(alg, psi);
  PolyFn out = tau_form(ctx, f.left, f.right, g.left, g.right);
  out.prune(1e-14);
  if (out.degree() > degree_cap) throw std::length_error("bracket exceeds the degree cap");
  return out;
}

inline double jacobi_residual(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi, const PolyFn& chi,
                              const Mat& l) {
  const cd v = bracket_tau(ctx, phi, symbolic_bracket_tau(ctx, psi, chi), l) +
               bracket_tau(ctx, psi, symbolic_bracket_tau(ctx, chi, phi), l) +
               bracket_tau(ctx, chi, symbolic_bracket_tau(ctx, phi, psi), l);
  return std::abs(v);
}

/// g o L = sigma(g)^{-1} L g.
inline Mat gauge_action(const PoissonContext& ctx, const Mat& g, const Mat& l) {
  return ctx.sigma_group(g).inverse() * l * g;
}

// ---- brackets in the factorized picture ----

/// Gradients with respect to the dual group structure on pairs (L+, L-).
struct DualGradients {
  Mat left;
  Mat right;
};

/// Dual-group gradients of phi(sigma(L+) L-^{-1}) from the group gradients of phi at L.
inline DualGradients dual_gradients_from_group(const PoissonContext& ctx, const Gradients& g, const Mat& lp) {
  const auto& r = ctx.r();
  DualGradients out;
  out.left = r.plus(g.right) - r.minus(ctx.sigma_inv(g.left));
  const Mat slp = ctx.sigma_group(lp);
  const Mat w = slp.inverse() * g.left * slp;
  out.right = r.plus(w) - r.minus(ctx.sigma_inv(w));
  return out;
}

/// Gradient of a function of n+ in the sense <X, G> = d/ds phi(e^{sX} n+), X in nbar; G in n.
inline Mat nplus_gradient(const PolyFn& phi, const Mat& np) {
  const auto part = phi.partials(entries_of(np));
  const Mat d = matrix_from_entries(part, int(np.rows()));
  return strictly_upper(Mat(np * d.transpose()));
}

/// Dual-group gradients of (L+, L-) -> phi(n+) with L+ = h+ n+.
inline DualGradients dual_gradients_nplus(const PoissonContext& ctx, const Mat& gn, const Mat& hp, const Mat& np) {
  DualGradients out;
  out.left = hp * gn * hp.inverse();
  out.right = -ctx.r().minus(Mat(np.inverse() * gn * np));
  return out;
}

inline void check_z_operator(const PoissonContext& ctx, Mat& zop) {
  const auto& r = ctx.r();
  zop = r.op_plus() - ctx.sigma_inv_op() * r.op_minus();
  if (std::abs(zop.determinant()) < 1e-12) throw std::domain_error("r+ - sigma^{-1} r- is not invertible");
}

/// Bracket in the factorized picture, with Z solving r+ Z - sigma^{-1} r- Z = right gradient.
inline cd pbracket(const PoissonContext& ctx, const DualGradients& f, const DualGradients& g, const Mat& lp,
                   const Mat& lm) {
  const auto& alg = ctx.algebra();
  Mat zop;
  check_z_operator(ctx, zop);
  Eigen::PartialPivLU<Mat> lu(zop);
  const Mat zf = alg.matrix(lu.solve(alg.coords(f.right)));
  const Mat zg = alg.matrix(lu.solve(alg.coords(g.right)));
  const Mat lpi = lp.inverse(), lmi = lm.inverse();
  const Mat uf = lp * ctx.sigma_inv(zf) * lpi - lm * zf * lmi;
  const Mat ug = lp * ctx.sigma_inv(zg) * lpi - lm * zg * lmi;
  return alg.pair(uf, g.left) - alg.pair(f.left, ug);
}

/// Bracket of two functions on G pulled back to pairs (L+, L-).
inline cd bracket_factorized(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi, const Mat& lp,
                             const Mat& lm) {
  const Mat l = ctx.sigma_group(lp) * lm.inverse();
  return pbracket(ctx, dual_gradients_from_group(ctx, gradients(phi, l), lp),
                  dual_gradients_from_group(ctx, gradients(psi, l), lp), lp, lm);
}

/// Cartan kernel (r0- + sigma r0+)(r0- - sigma r0+)^{-1}, sigma restricted to h.
inline Mat nplus_cartan_kernel(const PoissonContext& ctx) {
  const auto& r = ctx.r();
  const Mat sh = conjugation_on_h(ctx.twist_element());
  const Mat den = r.r0_minus() - sh * r.r0_plus();
  if (std::abs(den.determinant()) < 1e-12) throw std::domain_error("singular Cartan kernel");
  return (r.r0_minus() + sh * r.r0_plus()) * den.inverse();
}

/// Closed form for functions of n+ only, from gradients G in n.
inline cd bracket_nplus(const PoissonContext& ctx, const Mat& gf, const Mat& gg, const Mat& np) {
  const auto& alg = ctx.algebra();
  const Mat npi = np.inverse();
  const Mat wf = npi * gf * np, wg = npi * gg * np;
  const Mat kc = nplus_cartan_kernel(ctx);
  const Mat hf = alg.h_matrix(kc * alg.h_coords(diagonal_part(wf)));
  cd out = alg.pair(hf, diagonal_part(wg));
  out += alg.pair(strictly_upper(wf), strictly_lower(wg));
  out -= alg.pair(strictly_lower(wf), strictly_upper(wg));
  return out;
}

inline cd bracket_nplus(const PoissonContext& ctx, const PolyFn& phi, const PolyFn& psi, const TwistedFactorization& tf) {
  return bracket_nplus(ctx, nplus_gradient(phi, tf.n_plus), nplus_gradient(psi, tf.n_plus), tf.n_plus);
}

/// Group gradients of L -> phi(n+(L)) through the exact differential of the factorization.
inline Gradients nplus_pullback_gradients(const PoissonContext& ctx, const PolyFn& phi, const Mat& l,
                                          const TwistedFactorization& tf) {
  const auto part = phi.partials(entries_of(tf.n_plus));
  const Mat d = matrix_from_entries(part, ctx.n());
  return gradients_from_differential(ctx.algebra(), l, [&](const Mat& dl) {
    const auto df = factorization_differential(ctx, tf, dl);
    return (d.transpose() * df.dn_plus).trace();
  });
}

}  // namespace dsr
