#pragma once

// Drinfeld-Sokolov constraints, the K and A equations, the Poisson isomorphism and the slice.

#include "dsr/loop_modes.hpp"
#include "dsr/poisson.hpp"

#include <algorithm>
#include <optional>
#include <random>

namespace dsr {

// ---- constraint maps ----

inline Mat mu_N(const PoissonContext& ctx, const Mat& l) { return twisted_factorize(ctx, l).n_plus; }

/// e^{KX} n+ e^{-KX}.
inline Mat mu_N_DK(const PoissonContext& ctx, const Mat& k, const TwistedFactorization& tf) {
  const Mat kx = ctx.algebra().h_matrix(k * tf.x);
  return expm(kx) * tf.n_plus * expm(Mat(-kx));
}

inline Mat mu_N_DK(const PoissonContext& ctx, const Mat& k, const Mat& l) {
  return mu_N_DK(ctx, k, twisted_factorize(ctx, l));
}

/// d(e^{KX} n+ e^{-KX}) along dL.
inline Mat mu_N_DK_differential(const PoissonContext& ctx, const Mat& k, const TwistedFactorization& tf,
                                const Mat& dl) {
  const auto& alg = ctx.algebra();
  const auto df = factorization_differential(ctx, tf, dl);
  const Mat kx = alg.h_matrix(k * tf.x);
  const Mat e = expm(kx), ei = expm(Mat(-kx));
  const Mat mu = e * tf.n_plus * ei;
  return commutator(alg.h_matrix(k * df.dx), mu) + e * df.dn_plus * ei;
}

struct ConstraintSystem {
  PoissonContext ctx;
  Mat f;
  Mat k;  // zero for mu_N itself
  std::vector<std::pair<int, int>> positions;
  std::vector<PolyFn> constraints;  // in the entries of the constraint map

  ConstraintSystem(PoissonContext c, Mat f_elem, std::optional<Mat> k_op = std::nullopt)
      : ctx(std::move(c)), f(std::move(f_elem)) {
    const int n = ctx.n();
    k = k_op ? *k_op : Mat::Zero(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        positions.emplace_back(i, j);
        constraints.push_back(PolyFn::entry(i, j, n));
      }
  }

  Mat evaluate(const TwistedFactorization& tf) const { return mu_N_DK(ctx, k, tf); }

  /// chi_f applied to the constraints.
  std::vector<cd> character() const {
    std::vector<cd> v;
    const auto e = entries_of(f);
    for (const auto& c : constraints) v.push_back(c.evaluate(e));
    return v;
  }
};

/// Group gradients of phi(mu(L)) for a polynomial phi in the entries of the constraint map.
inline Gradients constraint_gradients(const ConstraintSystem& cs, const PolyFn& phi, const Mat& l,
                                      const TwistedFactorization& tf) {
  const Mat mu = cs.evaluate(tf);
  const Mat d = matrix_from_entries(phi.partials(entries_of(mu)), cs.ctx.n());
  return gradients_from_differential(cs.ctx.algebra(), l, [&](const Mat& dl) {
    return (d.transpose() * mu_N_DK_differential(cs.ctx, cs.k, tf, dl)).trace();
  });
}

/// L = sigma(h+ n+) (h- n-)^{-1} with n+ = e^{-KX} f e^{KX}, so that mu(L) = f.
inline Mat level_set_point(const ConstraintSystem& cs, const Vec& x, const Mat& n_minus) {
  const auto& alg = cs.ctx.algebra();
  const auto& r = cs.ctx.r();
  const Mat kx = alg.h_matrix(cs.k * x);
  const Mat np = expm(Mat(-kx)) * cs.f * expm(kx);
  const Mat hp = expm(alg.h_matrix(r.r0_plus() * x)), hm = expm(alg.h_matrix(r.r0_minus() * x));
  return cs.ctx.sigma_group(Mat(hp * np)) * (hm * n_minus).inverse();
}

inline double level_set_residual(const ConstraintSystem& cs, const Mat& l) {
  return max_abs(Mat(cs.evaluate(twisted_factorize(cs.ctx, l)) - cs.f));
}

/// max |{F_a, F_b}(L)| over constraint pairs; require_level_set validates mu(L) = f first.
inline double first_class_residual(const ConstraintSystem& cs, const Mat& l, bool require_level_set = true) {
  const auto tf = twisted_factorize(cs.ctx, l);
  if (require_level_set && max_abs(Mat(cs.evaluate(tf) - cs.f)) > 1e-8)
    throw std::domain_error("point is not on the constraint level set");
  std::vector<Gradients> g;
  for (const auto& c : cs.constraints) g.push_back(constraint_gradients(cs, c, l, tf));
  double worst = 0.0;
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t b = a + 1; b < g.size(); ++b) worst = std::max(worst, std::abs(bracket_tau(cs.ctx, g[a], g[b])));
  return worst;
}

/// Same quantity through the closed form for functions of n+ (K = 0 only).
inline double first_class_residual_nplus(const ConstraintSystem& cs, const Mat& l) {
  const auto tf = twisted_factorize(cs.ctx, l);
  double worst = 0.0;
  for (size_t a = 0; a < cs.constraints.size(); ++a)
    for (size_t b = a + 1; b < cs.constraints.size(); ++b)
      worst = std::max(worst, std::abs(bracket_nplus(cs.ctx, cs.constraints[a], cs.constraints[b], tf)));
  return worst;
}

/// max_j |{phi, F_j}(L)|.
inline double dual_pair_residual(const ConstraintSystem& cs, const PolyFn& phi, const Mat& l) {
  const auto tf = twisted_factorize(cs.ctx, l);
  const Gradients gp = gradients(phi, l);
  double worst = 0.0;
  for (const auto& c : cs.constraints)
    worst = std::max(worst, std::abs(bracket_tau(cs.ctx, gp, constraint_gradients(cs, c, l, tf))));
  return worst;
}

// ---- K and A ----

struct KOperator {
  Mat value;
  double residual = 0.0;     // of K - K* = (1/2)(1+s)/(1-s)
  double commutation = 0.0;  // |[K, s]|
};

/// K = (1/4)(1+s)/(1-s) + lambda (s + s^{-1}); the second term is the free symmetric part.
inline KOperator solve_K_finite(const RootSystemData& d, const Mat& s, cd symmetric_part = 0.0) {
  const Mat id = Mat::Identity(s.rows(), s.cols());
  if (std::abs((id - s).determinant()) < 1e-12) throw std::domain_error("1 - s is singular");
  KOperator k;
  k.value = solve_K_constant(s) + symmetric_part * (s + s.inverse());
  k.residual = k0_residual(d, s, k.value);
  k.commutation = max_abs(commutator(k.value, s));
  return k;
}

/// Cartan part r0 = (1 + theta)(1 - theta)^{-1} and its halves.
struct CartanHalves {
  Mat plus, minus;
};

inline CartanHalves cartan_halves(const Mat& theta) {
  const Mat id = Mat::Identity(theta.rows(), theta.cols());
  const Mat r0 = cayley(theta);
  return {0.5 * (r0 + id), 0.5 * (r0 - id)};
}

inline double commuting_residual(const std::vector<Mat>& ops) {
  double worst = 0.0;
  for (size_t a = 0; a < ops.size(); ++a)
    for (size_t b = a + 1; b < ops.size(); ++b) worst = std::max(worst, max_abs(commutator(ops[a], ops[b])));
  return worst;
}

struct AOperator {
  Mat value;
  Mat theta, theta_prime;
  double residual = 0.0;
};

/// Constant loops (D_p = 1): A - A* = theta'r0+ - theta r0+, skew solution.
inline AOperator solve_A(const RootSystemData& d, const Mat& theta, const Mat& theta_prime) {
  if (commuting_residual({theta, theta_prime}) > 1e-10) throw std::invalid_argument("theta and theta' do not commute");
  const auto h = cartan_halves(theta), hp = cartan_halves(theta_prime);
  AOperator a;
  a.theta = theta;
  a.theta_prime = theta_prime;
  a.value = 0.5 * (hp.plus - h.plus);
  a.residual = max_abs(Mat(a.value - adjoint_h(d, a.value) - (hp.plus - h.plus)));
  return a;
}

/// K = (A + theta r0+ - theta' r0+)(D theta' r0+ - theta' r0-)^{-1} at D = 1.
inline Mat induced_K(const AOperator& a) {
  const auto h = cartan_halves(a.theta), hp = cartan_halves(a.theta_prime);
  return (a.value + h.plus - hp.plus) * (hp.plus - hp.minus).inverse();
}

/// (1 - D)KK* + DK - K* against (theta r0+ - theta' r0+)(theta' r0+ - D^{-1} theta' r0-)^{-1} at D = 1.
inline double induced_K_residual(const RootSystemData& d, const AOperator& a, const Mat& k) {
  const auto h = cartan_halves(a.theta), hp = cartan_halves(a.theta_prime);
  const Mat rhs = (h.plus - hp.plus) * (hp.plus - hp.minus).inverse();
  return max_abs(Mat(k - adjoint_h(d, k) - rhs));
}

/// Per-mode families theta_n, theta'_n acting on mode n of the loop Cartan algebra.
using ModeFamily = std::map<int, Mat>;

struct AModeSolution {
  ModeKernel kernel;
  std::vector<int> failed_modes;
  double residual = 0.0;
};

namespace detail {
inline Mat mode_adjoint(const RootSystemData& d, const std::map<int, Mat>& m, int n) {
  return adjoint_h(d, m.at(-n));
}
}  // namespace detail

/// Residual of A A*(D-1)/(theta r0- - D theta r0+) + A - A* = theta' r0+ - theta r0+ on every mode.
inline double a_equation_residual(const RootSystemData& d, const ModeFamily& theta, const ModeFamily& theta_prime,
                                  const DilationParam& p, const ModeKernel& a) {
  double worst = 0.0;
  for (const auto& [n, an] : a.coefficients) {
    if (!a.coefficients.count(-n)) continue;
    const auto h = cartan_halves(theta.at(n)), hp = cartan_halves(theta_prime.at(n));
    const cd q = p.power(n);
    const Mat quot = (q - 1.0) * (h.minus - q * h.plus).inverse();
    const Mat as = detail::mode_adjoint(d, a.coefficients, n);
    const Mat lhs = an * as * quot + an - as;
    worst = std::max(worst, max_abs(Mat(lhs - (hp.plus - h.plus))));
  }
  return worst;
}

/// Mode-wise skew solution in the common eigenbasis: -Q a^2 + 2a = R on each eigenline.
inline AModeSolution solve_A_modes(const RootSystemData& d, const ModeFamily& theta, const ModeFamily& theta_prime,
                                   const DilationParam& p, int truncation, bool alternative_root = false) {
  AModeSolution sol;
  sol.kernel.truncation = truncation;
  const Eigen::Index l = theta.at(0).rows();
  sol.kernel.tail_plus = Mat::Zero(l, l);
  sol.kernel.tail_minus = Mat::Zero(l, l);
  Eigen::ComplexEigenSolver<Mat> es(theta.at(1));
  const Mat v = es.eigenvectors(), vi = v.inverse();
  for (int n = -truncation; n <= truncation; ++n) {
    const Mat& t = theta.at(n);
    const Mat& tp = theta_prime.at(n);
    if (commuting_residual({t, tp, theta.at(1)}) > 1e-9)
      throw std::invalid_argument("theta, theta' are not a commuting family at mode " + std::to_string(n));
    const auto h = cartan_halves(t), hp = cartan_halves(tp);
    const cd q = p.power(n);
    const Mat quot = (q - 1.0) * (h.minus - q * h.plus).inverse();
    const Mat qd = vi * quot * v, rd = vi * (hp.plus - h.plus) * v;
    Vec x(l);
    bool ok = true;
    for (Eigen::Index i = 0; i < l; ++i) {
      auto [small, large] = detail::quadratic_roots(-qd(i, i), 2.0, -rd(i, i));
      x(i) = alternative_root ? large : small;
      if (!std::isfinite(std::abs(x(i)))) ok = false;
    }
    if (!ok) sol.failed_modes.push_back(n);
    sol.kernel.coefficients[n] = v * x.asDiagonal() * vi;
  }
  sol.residual = a_equation_residual(d, theta, theta_prime, p, sol.kernel);
  return sol;
}

/// Induced K_n = (A + theta r0+ - theta' r0+)(D theta' r0+ - theta' r0-)^{-1}, mode by mode.
inline ModeKernel induced_K_modes(const ModeFamily& theta, const ModeFamily& theta_prime, const DilationParam& p,
                                  const ModeKernel& a) {
  ModeKernel k;
  k.truncation = a.truncation;
  k.tail_plus = a.tail_plus;
  k.tail_minus = a.tail_minus;
  for (const auto& [n, an] : a.coefficients) {
    const auto h = cartan_halves(theta.at(n)), hp = cartan_halves(theta_prime.at(n));
    k.coefficients[n] = (an + h.plus - hp.plus) * (p.power(n) * hp.plus - hp.minus).inverse();
  }
  return k;
}

/// (1-D)KK* + DK - K* against (theta r0+ - theta' r0+)(theta' r0+ - D^{-1} theta' r0-)^{-1}.
inline double induced_K_modes_residual(const RootSystemData& d, const ModeFamily& theta,
                                       const ModeFamily& theta_prime, const DilationParam& p, const ModeKernel& k) {
  double worst = 0.0;
  for (const auto& [n, kn] : k.coefficients) {
    if (!k.coefficients.count(-n)) continue;
    const auto h = cartan_halves(theta.at(n)), hp = cartan_halves(theta_prime.at(n));
    const cd q = p.power(n);
    const Mat ks = detail::mode_adjoint(d, k.coefficients, n);
    const Mat lhs = (1.0 - q) * kn * ks + q * kn - ks;
    const Mat rhs = (h.plus - hp.plus) * (hp.plus - hp.minus / q).inverse();
    worst = std::max(worst, max_abs(Mat(lhs - rhs)));
  }
  return worst;
}

// ---- the isomorphism between structures (constant loops) ----

/// L' = t L t^{-1}, t = e^{AX}, X from the factorization in the source context.
inline Mat iso_map(const PoissonContext& source, const Mat& a, const Mat& l) {
  const auto tf = twisted_factorize(source, l);
  const Mat t = expm(source.algebra().h_matrix(a * tf.x));
  return t * l * t.inverse();
}

/// Exact differential of iso_map along dL.
inline Mat iso_map_differential(const PoissonContext& source, const Mat& a, const Mat& l,
                                const TwistedFactorization& tf, const Mat& dl) {
  const auto& alg = source.algebra();
  const Mat t = expm(alg.h_matrix(a * tf.x)), ti = t.inverse();
  const Mat dax = alg.h_matrix(a * factorization_differential(source, tf, dl).dx);
  const Mat lp = t * l * ti;
  return dax * lp + t * dl * ti - lp * dax;
}

/// |{phi o m, psi o m}_source(L) - {phi, psi}_target(m(L))|.
inline double iso_transport_residual(const PoissonContext& source, const PoissonContext& target, const Mat& a,
                                     const PolyFn& phi, const PolyFn& psi, const Mat& l) {
  const auto tf = twisted_factorize(source, l);
  const Mat lp = iso_map(source, a, l);
  auto pulled = [&](const PolyFn& f) {
    const Mat dmat = matrix_from_entries(f.partials(entries_of(lp)), source.n());
    return gradients_from_differential(source.algebra(), l, [&](const Mat& dl) {
      return (dmat.transpose() * iso_map_differential(source, a, l, tf, dl)).trace();
    });
  };
  return std::abs(bracket_tau(source, pulled(phi), pulled(psi)) - bracket_tau(target, phi, psi, lp));
}

/// Distance of the factorization of L' in the target context from the component formulas
/// h'_pm = e^{theta' r0_pm Y}, n'_+ = e^{KX} n+ e^{-KX}, n'_- = e^{KX} n- e^{-KX} (D = 1, so Y = X).
inline double iso_components_residual(const PoissonContext& source, const PoissonContext& target, const AOperator& a,
                                      const Mat& l) {
  const auto& alg = source.algebra();
  const auto tf = twisted_factorize(source, l);
  const auto tg = twisted_factorize(target, iso_map(source, a.value, l));
  const Mat kx = alg.h_matrix(induced_K(a) * tf.x);
  const Mat e = expm(kx), ei = expm(Mat(-kx));
  const auto hp = cartan_halves(a.theta_prime);
  double res = max_abs(Vec(tg.x - tf.x));
  res = std::max(res, max_abs(Mat(tg.h_plus - expm(alg.h_matrix(hp.plus * tf.x)))));
  res = std::max(res, max_abs(Mat(tg.h_minus - expm(alg.h_matrix(hp.minus * tf.x)))));
  res = std::max(res, max_abs(Mat(tg.n_plus - e * tf.n_plus * ei)));
  res = std::max(res, max_abs(Mat(tg.n_minus - e * tf.n_minus * ei)));
  return res;
}

/// m^{-1}(m(L)) - L, with the inverse map built from the reversed A equation.
inline double iso_roundtrip_residual(const RootSystemData& d, const PoissonContext& source,
                                     const PoissonContext& target, const AOperator& a, const Mat& l) {
  const auto back = solve_A(d, a.theta_prime, a.theta);
  const Mat lp = iso_map(source, a.value, l);
  return max_abs(Mat(iso_map(target, back.value, lp) - l));
}

// ---- slice S = N' s^{-1} and the Miura picture ----

struct SliceResult {
  Mat v;       // gauge element in N
  Mat point;   // v^{-1} L v in N' s^{-1}
  Mat nprime;  // point * s
  int iterations = 0;
  bool converged = false;
  std::vector<double> trajectory;
  int nprime_dim = 0;
  double bracket_residual = 0.0;  // max |{phi_a, phi_b}| over slice coordinates and complement choices
};

namespace detail {
inline std::vector<std::pair<int, int>> upper_positions(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// entries of M that must vanish (or equal 1 on the diagonal) for M in N'
inline Vec slice_defect(const Mat& m, const std::vector<std::pair<int, int>>& nprime, bool linear = false) {
  const int n = int(m.rows());
  std::vector<cd> r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        r.push_back(linear ? m(i, i) : m(i, i) - 1.0);
      } else if (i > j || std::find(nprime.begin(), nprime.end(), std::make_pair(i, j)) == nprime.end()) {
        r.push_back(m(i, j));
      }
    }
  return Eigen::Map<Vec>(r.data(), Eigen::Index(r.size()));
}
}  // namespace detail

/// Gauss-Newton for v in N with v^{-1} L v s in N'; step halved while the residual grows.
inline SliceResult find_slice_gauge(const Mat& l, const Mat& s_inv, const std::vector<std::pair<int, int>>& nprime,
                                    double tol = 1e-12, int max_iter = 100) {
  const int n = int(l.rows());
  const Mat s = s_inv.inverse();
  const auto pos = detail::upper_positions(n);
  auto assemble = [&](const Vec& c) {
    Mat v = Mat::Identity(n, n);
    for (size_t k = 0; k < pos.size(); ++k) v(pos[k].first, pos[k].second) = c(Eigen::Index(k));
    return v;
  };
  auto defect = [&](const Vec& c) {
    const Mat v = assemble(c);
    return detail::slice_defect(Mat(v.inverse() * l * v * s), nprime);
  };
  SliceResult out;
  Vec c = Vec::Zero(Eigen::Index(pos.size()));
  Vec r = defect(c);
  double res = max_abs(r);
  out.trajectory.push_back(res);
  while (res > tol && out.iterations < max_iter) {
    const Mat v = assemble(c), vi = v.inverse();
    const Mat lv = l * v;
    Mat jac(r.size(), Eigen::Index(pos.size()));
    for (size_t k = 0; k < pos.size(); ++k) {
      Mat dv = Mat::Zero(n, n);
      dv(pos[k].first, pos[k].second) = 1.0;
      const Mat dm = (-vi * dv * vi * lv + vi * l * dv) * s;
      jac.col(Eigen::Index(k)) = detail::slice_defect(dm, nprime, true);
    }
    const Vec step = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    Vec trial = c + step;
    Vec rt = defect(trial);
    while (max_abs(rt) > res && lambda > 1e-6) {
      lambda *= 0.5;
      trial = c + lambda * step;
      rt = defect(trial);
    }
    c = trial;
    r = rt;
    res = max_abs(r);
    ++out.iterations;
    out.trajectory.push_back(res);
  }
  out.converged = res <= tol;
  out.v = assemble(c);
  out.point = out.v.inverse() * l * out.v;
  out.nprime = out.point * s;
  out.nprime_dim = int(nprime.size());
  if (!out.converged) {
    std::string msg = "slice Newton iteration diverged; residuals:";
    for (double t : out.trajectory) msg += " " + std::to_string(t);
    throw std::runtime_error(msg);
  }
  return out;
}

/// Left gradients of the slice coordinates at P = n' s^{-1}: zero on gauge orbit tangents and on a
/// complement, dual to the N' directions. `order` fixes the complement search order over the basis.
inline std::vector<Gradients> slice_coordinate_gradients(const SlAlgebra& alg, const Mat& p, const Mat& s_inv,
                                                         const std::vector<std::pair<int, int>>& nprime,
                                                         const std::vector<int>& order) {
  const int n = alg.n(), dim = alg.dim();
  const Mat pi = p.inverse();
  std::vector<Vec> rows;
  std::vector<int> slice_row;
  auto rank_of = [&](const std::vector<Vec>& vs) {
    Mat m(Eigen::Index(vs.size()), dim);
    for (size_t k = 0; k < vs.size(); ++k) m.row(Eigen::Index(k)) = vs[k].transpose();
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(1e-10);
    return int(lu.rank());
  };
  for (const auto& [i, j] : detail::upper_positions(n)) {
    Mat e = Mat::Zero(n, n);
    e(i, j) = 1.0;
    rows.push_back(alg.coords(Mat(p * e * pi - e)));
  }
  for (const auto& [i, j] : nprime) {
    Mat e = Mat::Zero(n, n);
    e(i, j) = 1.0;
    slice_row.push_back(int(rows.size()));
    rows.push_back(alg.coords(Mat(e * s_inv * pi)));
  }
  if (rank_of(rows) != int(rows.size())) throw std::domain_error("slice and orbit directions are not independent");
  for (int a : order) {
    if (int(rows.size()) == dim) break;
    auto trial = rows;
    trial.push_back(Vec::Unit(dim, a));
    if (rank_of(trial) == int(trial.size())) rows = trial;
  }
  Mat t(dim, dim);
  for (int k = 0; k < dim; ++k) t.row(k) = rows[size_t(k)].transpose();
  const Mat tg = t * alg.gram();
  Eigen::PartialPivLU<Mat> lu(tg);
  std::vector<Gradients> out;
  for (int sr : slice_row) {
    const Mat g = alg.matrix(lu.solve(Vec::Unit(dim, sr)));
    out.push_back({g, Mat(pi * g * p)});
  }
  return out;
}

/// Reduced bracket of the slice coordinates at the slice point of L (sigma = id, theta = s).
inline SliceResult slice_and_miura_check(const PoissonContext& ctx, const Mat& l, std::uint64_t seed = 1) {
  const int n = ctx.n(), l_rank = n - 1;
  const auto nprime = nprime_roots(l_rank);
  const Mat s_inv = coxeter_inverse_representative(l_rank).matrix;
  SliceResult out = find_slice_gauge(l, s_inv, nprime);
  const auto& alg = ctx.algebra();
  std::vector<int> order(size_t(alg.dim()));
  for (int a = 0; a < alg.dim(); ++a) order[size_t(a)] = a;
  std::vector<std::vector<int>> orders{order};
  std::mt19937_64 eng(seed);
  std::shuffle(order.begin(), order.end(), eng);
  orders.push_back(order);
  for (const auto& ord : orders) {
    const auto g = slice_coordinate_gradients(alg, out.point, s_inv, nprime, ord);
    for (size_t a = 0; a < g.size(); ++a)
      for (size_t b = a + 1; b < g.size(); ++b)
        out.bracket_residual = std::max(out.bracket_residual, std::abs(bracket_tau(ctx, g[a], g[b])));
  }
  return out;
}

// ---- simple-root coefficients under e^{KX} n+ e^{-KX} ----

struct AnzCheck {
  double printed = 0.0;  // against e^{+<alpha_i, K X>} phi_i
  double derived = 0.0;  // against e^{-<alpha_i, K X>} phi_i
};

inline cd simple_root_value(const Mat& h, int i) { return h(i - 1, i - 1) - h(i, i); }

/// phi_i are the (i+1, i) entries of n+ and psi the coroot coordinates of X.
inline AnzCheck anz_check(const PoissonContext& ctx, const Mat& k, const Mat& l) {
  const auto& alg = ctx.algebra();
  const auto tf = twisted_factorize(ctx, l);
  const Mat mu = mu_N_DK(ctx, k, tf);
  const Mat kx = alg.h_matrix(k * tf.x);
  AnzCheck out;
  for (int i = 1; i < ctx.n(); ++i) {
    const cd a = simple_root_value(kx, i);
    const cd phi = tf.n_plus(i, i - 1), got = mu(i, i - 1);
    const double scale = std::max(1.0, std::abs(got));
    out.printed = std::max(out.printed, std::abs(got - std::exp(a) * phi) / scale);
    out.derived = std::max(out.derived, std::abs(got - std::exp(-a) * phi) / scale);
  }
  return out;
}

}  // namespace dsr
