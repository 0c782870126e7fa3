#pragma once

// Gauss decomposition and the twisted factorization L = sigma(L+) L-^{-1}.

#include "dsr/context.hpp"

#include <string>

namespace dsr {

struct GaussDecomposition {
  Mat lower;      // lower unipotent
  Vec diag;       // pivots
  Mat upper_inv;  // upper unipotent; L = lower * diag * upper_inv
  Vec minors;     // leading principal minors

  Mat upper() const { return upper_inv.inverse(); }
  Mat reassemble() const { return lower * diag.asDiagonal() * upper_inv; }
};

/// Elimination without row exchanges.
inline GaussDecomposition gauss_decompose(const Mat& l, double rel_tol = 1e-13) {
  const int n = int(l.rows());
  Mat u = l;
  Mat lo = Mat::Identity(n, n);
  const double scale = std::max(1.0, max_abs(l));
  Vec minors(n);
  cd acc = 1.0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(u(k, k)) <= rel_tol * scale)
      throw std::domain_error("outside the big cell: leading minor " + std::to_string(k + 1) + " vanishes");
    acc *= u(k, k);
    minors(k) = acc;
    for (int i = k + 1; i < n; ++i) {
      const cd m = u(i, k) / u(k, k);
      lo(i, k) = m;
      u.row(i) -= m * u.row(k);
      u(i, k) = 0.0;
    }
  }
  GaussDecomposition g;
  g.lower = lo;
  g.diag = u.diagonal();
  g.upper_inv = g.diag.cwiseInverse().asDiagonal() * u;
  g.minors = minors;
  return g;
}

struct TwistedFactorization {
  Vec x;  // h coordinates of X
  Mat x_matrix;
  Mat h_plus, h_minus;
  Mat n_plus;   // lower unipotent
  Mat n_minus;  // upper unipotent
  GaussDecomposition gauss;

  Mat l_plus() const { return h_plus * n_plus; }
  Mat l_minus() const { return h_minus * n_minus; }
};

inline TwistedFactorization twisted_factorize(const PoissonContext& ctx, const Mat& l) {
  const auto& alg = ctx.algebra();
  TwistedFactorization tf;
  tf.gauss = gauss_decompose(l);
  Vec logd = principal_log(tf.gauss.diag);
  const cd tr = logd.sum();
  if (std::abs(tr) > 1e-9) throw std::domain_error("log of the Cartan factor is not traceless on the principal branch");
  tf.x_matrix = traceless(Mat(logd.asDiagonal()));
  tf.x = alg.h_coords(tf.x_matrix);
  const auto& r = ctx.r();
  tf.h_plus = expm(alg.h_matrix(r.r0_plus() * tf.x));
  tf.h_minus = expm(alg.h_matrix(r.r0_minus() * tf.x));
  const Mat hpi = tf.h_plus.inverse(), hmi = tf.h_minus.inverse();
  tf.n_plus = ctx.sigma_inv_group(hpi * tf.gauss.lower * tf.h_plus);
  tf.n_minus = hmi * tf.gauss.upper() * tf.h_minus;
  return tf;
}

inline Mat reassemble(const PoissonContext& ctx, const TwistedFactorization& tf) {
  return ctx.sigma_group(tf.l_plus()) * tf.l_minus().inverse();
}

/// First-order variation of the factorization along dL.
struct FactorizationDifferential {
  Vec dx;          // h coordinates of dX
  Mat dlower;      // variation of the lower unipotent Gauss factor
  Mat dupper;      // variation of the upper unipotent Gauss factor (not its inverse)
  Mat dn_plus;
};

inline FactorizationDifferential factorization_differential(const PoissonContext& ctx, const TwistedFactorization& tf,
                                                           const Mat& dl) {
  const auto& alg = ctx.algebra();
  const auto& g = tf.gauss;
  const Mat nm = g.upper();
  const Mat m = g.lower.inverse() * dl * nm;
  const Vec dinv = g.diag.cwiseInverse();
  FactorizationDifferential out;
  out.dlower = g.lower * strictly_lower(m) * dinv.asDiagonal();
  out.dupper = -nm * dinv.asDiagonal() * strictly_upper(m);
  Vec dlog(g.diag.size());
  for (Eigen::Index k = 0; k < dlog.size(); ++k) dlog(k) = m(k, k) * dinv(k);
  out.dx = alg.h_coords(Mat(dlog.asDiagonal()));
  const Mat delta = alg.h_matrix(ctx.r().r0_plus() * out.dx);
  const Mat hpi = tf.h_plus.inverse();
  const Mat w = hpi * g.lower * tf.h_plus;
  out.dn_plus = ctx.sigma_inv_group(Mat(-delta * w + hpi * out.dlower * tf.h_plus + w * delta));
  return out;
}

/// Residual of the Coxeter relation h- = s h+ s^{-1} (theta = s, constant case).
inline double coxeter_h_relation_residual(const TwistedFactorization& tf, const Mat& s_rep) {
  return max_abs(Mat(tf.h_minus - s_rep * tf.h_plus * s_rep.inverse()));
}

}  // namespace dsr
