#pragma once

// Cartan sector of the loop algebra in Fourier modes.

#include "dsr/cartan_weyl.hpp"

#include <limits>
#include <map>
#include <ostream>
#include <string>

namespace dsr {

struct DilationParam {
  cd p;
  explicit DilationParam(cd value) : p(value) {
    if (!(std::abs(p) < 1.0) || p == cd(0.0)) throw std::invalid_argument("dilation parameter needs 0 < |p| < 1");
  }
  cd power(int n) const { return std::pow(p, n); }
};

struct LoopHElement {
  std::map<int, Vec> modes;
  int truncation = 0;

  void set(int n, const Vec& v) {
    if (std::abs(n) > truncation) throw std::out_of_range("mode outside the truncation window");
    modes[n] = v;
  }
};

struct ModeKernel {
  std::map<int, Mat> coefficients;
  Mat tail_plus;
  Mat tail_minus;
  int truncation = 0;

  const Mat& at(int n) const { return coefficients.at(n); }
};

/// sum_n (X_n, Y_{-n}) with the form on h.
inline cd loop_scalar_product(const RootSystemData& d, const LoopHElement& x, const LoopHElement& y) {
  cd acc = 0.0;
  for (const auto& [n, v] : x.modes) {
    auto it = y.modes.find(-n);
    if (it != y.modes.end()) acc += (v.transpose() * d.form_h * it->second)(0, 0);
  }
  return acc;
}

/// (D_p X)(z) = X(pz).
inline LoopHElement dilate(const LoopHElement& x, const DilationParam& p) {
  LoopHElement out = x;
  for (auto& [n, v] : out.modes) v *= p.power(n);
  return out;
}

inline ModeKernel kernel_theta(const Mat& theta0, const DilationParam& p, int truncation) {
  const Eigen::Index l = theta0.rows();
  const Mat id = Mat::Identity(l, l);
  ModeKernel k;
  k.truncation = truncation;
  k.tail_plus = id;
  k.tail_minus = -id;
  for (int n = -truncation; n <= truncation; ++n) {
    const Mat t = p.power(n) * theta0;
    Eigen::PartialPivLU<Mat> lu(id - t);
    if (std::abs(lu.determinant()) < 1e-14)
      throw std::domain_error("1 - p^n theta is singular at n = " + std::to_string(n));
    k.coefficients[n] = (id + t) * lu.inverse();
  }
  return k;
}

inline ModeKernel kernel_drinfeld(int l, int truncation) {
  const Mat id = Mat::Identity(l, l);
  ModeKernel k;
  k.truncation = truncation;
  k.tail_plus = id;
  k.tail_minus = -id;
  for (int n = -truncation; n <= truncation; ++n) k.coefficients[n] = double((n > 0) - (n < 0)) * id;
  return k;
}

/// max over 0 < |n| <= N of |(1+u^n)/(1-u^n) - sign(n)|.
inline double kernel_limit_check(cd u, int truncation) {
  if (!(std::abs(u) > 0.0 && std::abs(u) < 1.0)) throw std::invalid_argument("limit check needs 0 < |u| < 1");
  double worst = 0.0;
  for (int n = -truncation; n <= truncation; ++n) {
    if (n == 0) continue;
    const cd q = std::pow(u, n);
    worst = std::max(worst, std::abs((1.0 + q) / (1.0 - q) - double(n > 0 ? 1 : -1)));
  }
  return worst;
}

/// max_n |k(-n) + k(n)*|, the adjoint taken with respect to the form on h.
inline double kernel_skew_residual(const RootSystemData& d, const ModeKernel& k) {
  double worst = 0.0;
  for (const auto& [n, c] : k.coefficients) {
    auto it = k.coefficients.find(-n);
    if (it != k.coefficients.end()) worst = std::max(worst, max_abs(Mat(it->second + adjoint_h(d, c))));
  }
  return worst;
}

/// Smallest C with |k(n) -+ 1| <= C |p|^|n| on retained modes.
inline double kernel_tail_constant(const ModeKernel& k, const DilationParam& p) {
  double c = 0.0;
  for (const auto& [n, m] : k.coefficients) {
    if (n == 0) continue;
    const Mat& tail = n > 0 ? k.tail_plus : k.tail_minus;
    c = std::max(c, max_abs(Mat(m - tail)) / std::pow(std::abs(p.p), std::abs(n)));
  }
  return c;
}

inline double kernel_commutation_residual(const ModeKernel& k, const Mat& s) {
  double worst = 0.0;
  for (const auto& [n, m] : k.coefficients) worst = std::max(worst, max_abs(commutator(m, s)));
  return worst;
}

// ---- the K equation ----

/// Right-hand side at mode n: -p^n s/(1-s), -1/(1-s) or (1/2)(1+s)/(1-s).
inline Mat k_equation_rhs(const Mat& s, const DilationParam& p, int n) {
  const Mat id = Mat::Identity(s.rows(), s.cols());
  const Mat inv = (id - s).inverse();
  if (n > 0) return -p.power(n) * s * inv;
  if (n < 0) return -inv;
  return 0.5 * (id + s) * inv;
}

/// Constant-loop solution of K - K* = (1/2)(1+s)/(1-s) with vanishing symmetric part.
inline Mat solve_K_constant(const Mat& s) {
  const Mat id = Mat::Identity(s.rows(), s.cols());
  return 0.25 * (id + s) * (id - s).inverse();
}

inline double k0_residual(const RootSystemData& d, const Mat& s, const Mat& k) {
  const Mat id = Mat::Identity(s.rows(), s.cols());
  return max_abs(Mat(k - adjoint_h(d, k) - 0.5 * (id + s) * (id - s).inverse()));
}

/// Per-mode residual of (1-D_p) K K* + D_p K - K* = rhs, with (K*)_n = (K_{-n})*.
inline std::map<int, double> k_equation_mode_residuals(const RootSystemData& d, const Mat& s, const DilationParam& p,
                                                       const ModeKernel& k) {
  std::map<int, double> out;
  for (const auto& [n, kn] : k.coefficients) {
    auto it = k.coefficients.find(-n);
    if (it == k.coefficients.end()) continue;
    const Mat ks = adjoint_h(d, it->second);
    const cd q = p.power(n);
    const Mat lhs = (1.0 - q) * kn * ks + q * kn - ks;
    out[n] = max_abs(Mat(lhs - k_equation_rhs(s, p, n)));
  }
  return out;
}

inline double k_equation_residual(const RootSystemData& d, const Mat& s, const DilationParam& p, const ModeKernel& k) {
  double worst = 0.0;
  for (const auto& [n, r] : k_equation_mode_residuals(d, s, p, k)) worst = std::max(worst, r);
  return worst;
}

struct KSolution {
  ModeKernel kernel;
  std::vector<int> failed_modes;
  double residual = 0.0;
  double commutation = 0.0;
};

namespace detail {
// Roots of a x^2 + b x + c = 0 ordered by magnitude.
inline std::pair<cd, cd> quadratic_roots(cd a, cd b, cd c) {
  if (std::abs(a) < 1e-300) {
    const cd x = -c / b;
    return {x, cd(std::numeric_limits<double>::infinity())};
  }
  cd disc = std::sqrt(b * b - 4.0 * a * c);
  if (std::abs(b + disc) < std::abs(b - disc)) disc = -disc;
  const cd q = -0.5 * (b + disc);
  cd x1 = q / a, x2 = q == cd(0.0) ? cd(0.0) : c / q;
  if (std::abs(x2) < std::abs(x1)) std::swap(x1, x2);
  return {x1, x2};
}
}  // namespace detail

/// Mode-wise solve in the eigenbasis of s; on each eigenline
/// (1-p^n) x^2 - (1+p^n) x + R_n = 0 with K_{-n} = -K_n* on the paired line.
inline KSolution solve_K_modes(const RootSystemData& d, const Mat& s, const DilationParam& p, int truncation,
                               bool alternative_root = false) {
  Eigen::ComplexEigenSolver<Mat> es(s);
  const Mat v = es.eigenvectors();
  const Mat vi = v.inverse();
  const Vec w = es.eigenvalues();
  const Eigen::Index l = w.size();
  KSolution sol;
  sol.kernel.truncation = truncation;
  sol.kernel.tail_plus = Mat::Zero(l, l);
  sol.kernel.tail_minus = Mat::Zero(l, l);
  for (int n = -truncation; n <= truncation; ++n) {
    const cd q = p.power(n);
    Vec x(l);
    bool ok = true;
    for (Eigen::Index i = 0; i < l; ++i) {
      const cd om = w(i);
      const cd rhs = n > 0 ? -q * om / (1.0 - om) : n < 0 ? -1.0 / (1.0 - om) : 0.5 * (1.0 + om) / (1.0 - om);
      auto [small, large] = detail::quadratic_roots(1.0 - q, -(1.0 + q), rhs);
      x(i) = alternative_root ? large : small;
      if (!std::isfinite(std::abs(x(i)))) ok = false;
    }
    if (!ok) sol.failed_modes.push_back(n);
    sol.kernel.coefficients[n] = v * x.asDiagonal() * vi;
  }
  sol.residual = k_equation_residual(d, s, p, sol.kernel);
  sol.commutation = kernel_commutation_residual(sol.kernel, s);
  return sol;
}

/// CSV: n, then real and imaginary parts of each entry in row-major order.
inline void write_kernel_csv(std::ostream& os, const ModeKernel& k) {
  if (k.coefficients.empty()) return;
  const Eigen::Index l = k.coefficients.begin()->second.rows();
  os << "n";
  for (Eigen::Index i = 0; i < l; ++i)
    for (Eigen::Index j = 0; j < l; ++j) os << ",re_" << i << j << ",im_" << i << j;
  os << "\n";
  os.precision(17);
  for (const auto& [n, m] : k.coefficients) {
    os << n;
    for (Eigen::Index i = 0; i < l; ++i)
      for (Eigen::Index j = 0; j < l; ++j) os << "," << m(i, j).real() + 0.0 << "," << m(i, j).imag() + 0.0;
    os << "\n";
  }
}

}  // namespace dsr
