#pragma once

// Theta function numerics and the elliptic form of the Cartan kernel.

#include "dsr/loop_modes.hpp"

#include <ostream>

namespace dsr {

struct ThetaParams {
  cd xi;
  cd t;
  int product_truncation = 40;

  static ThetaParams from_xi(cd xi, int truncation = 40) {
    if (!(xi.imag() > 0.0)) throw std::invalid_argument("theta parameter needs Im xi > 0");
    if (truncation < 1) throw std::invalid_argument("product truncation must be positive");
    return {xi, std::exp(cd(0.0, pi) * xi), truncation};
  }

  /// |t|^(2M-1), size of the first neglected factor.
  double truncation_bound() const { return std::pow(std::abs(t), 2 * product_truncation - 1); }
};

namespace detail {
// distance from u to the zero lattice m + (n + 1/2) xi
inline double theta_zero_distance(const ThetaParams& tp, cd u) {
  const double k = std::round(u.imag() / tp.xi.imag() - 0.5);
  double best = std::numeric_limits<double>::infinity();
  for (double n = k - 1; n <= k + 1; ++n) {
    const cd w = u - (n + 0.5) * tp.xi;
    best = std::min(best, std::abs(w - std::round(w.real())));
  }
  return best;
}
}  // namespace detail

/// c prod_{n=1}^M (1 - t^{2n-1} e^{2 pi i u})(1 - t^{2n-1} e^{-2 pi i u}), accumulated in log space.
inline cd theta_eval(const ThetaParams& tp, cd u) {
  const cd e = std::exp(cd(0.0, 2 * pi) * u), ei = 1.0 / e;
  cd acc = 0.0;
  cd t_odd = tp.t;
  const cd t2 = tp.t * tp.t;
  cd t_even = t2;
  for (int n = 1; n <= tp.product_truncation; ++n) {
    acc += std::log(1.0 - t_even) + std::log(1.0 - t_odd * e) + std::log(1.0 - t_odd * ei);
    t_odd *= t2;
    t_even *= t2;
  }
  return std::exp(acc);
}

/// theta'/theta from the differentiated product.
inline cd theta_log_derivative(const ThetaParams& tp, cd u) {
  if (detail::theta_zero_distance(tp, u) < 1e-6) throw std::domain_error("argument too close to a zero of theta");
  const cd e = std::exp(cd(0.0, 2 * pi) * u), ei = 1.0 / e;
  const cd tpi(0.0, 2 * pi);
  cd acc = 0.0;
  cd a = tp.t;
  const cd t2 = tp.t * tp.t;
  for (int n = 1; n <= tp.product_truncation; ++n) {
    acc += -tpi * a * e / (1.0 - a * e) + tpi * a * ei / (1.0 - a * ei);
    a *= t2;
  }
  return acc;
}

/// (2 pi / i) sum_{n != 0} t^n / (1 - t^{2n}) e^{2 pi i n u}, valid inside the stripe |Im u| < Im xi / 2.
inline cd theta_log_derivative_fourier(const ThetaParams& tp, cd u, int terms = 400) {
  if (std::abs(u.imag()) >= 0.5 * tp.xi.imag()) throw std::domain_error("Fourier series used outside its stripe");
  const cd e = std::exp(cd(0.0, 2 * pi) * u), ei = 1.0 / e;
  cd acc = 0.0, tn = 1.0, en = 1.0, ein = 1.0;
  for (int n = 1; n <= terms; ++n) {
    tn *= tp.t;
    en *= e;
    ein *= ei;
    acc += tn / (1.0 - tn * tn) * (en - ein);
  }
  return cd(0.0, -2 * pi) * acc;
}

struct EllipticKernelSpec {
  Mat s_op;
  DilationParam p;
  int coxeter_number;
  ThetaParams params;

  static EllipticKernelSpec make(const Mat& s, cd p, int h, int truncation = 40) {
    DilationParam dp(p);
    const cd xi = double(h) * std::log(p) / cd(0.0, 2 * pi);
    return {s, dp, h, ThetaParams::from_xi(xi, truncation)};
  }

  /// |t - p^{h/2}|.
  double relation_residual() const {
    return std::abs(params.t - std::exp(0.5 * double(coxeter_number) * std::log(p.p)));
  }
};

namespace detail {
// the theta'/theta values entering the elliptic form: index m = 1..h-1, then the two boundary terms
inline std::vector<cd> elliptic_terms(const EllipticKernelSpec& sp, cd u) {
  const int h = sp.coxeter_number;
  const cd xi = sp.params.xi;
  std::vector<cd> f(size_t(h + 1));
  for (int m = 1; m < h; ++m) f[size_t(m)] = theta_log_derivative(sp.params, u + xi * (double(m) / h - 0.5));
  f[0] = theta_log_derivative(sp.params, u - 0.5 * xi) + theta_log_derivative(sp.params, u + 0.5 * xi);
  return f;
}

inline void check_real_support(double u) {
  if (std::abs(u - std::round(u)) < 1e-6) throw std::domain_error("argument on the singular support (too close to Z)");
}
}  // namespace detail

/// (i/2pi)(2 sum_m s^m F(u + xi(m/h - 1/2)) + F(u - xi/2) + F(u + xi/2)), plus (1+s)/(1-s) unless
/// include_constant is false.
inline Mat elliptic_r0_eval_complex(const EllipticKernelSpec& sp, cd u, bool include_constant = true) {
  const auto f = detail::elliptic_terms(sp, u);
  const Eigen::Index l = sp.s_op.rows();
  const Mat id = Mat::Identity(l, l);
  Mat acc = f[0] * id;
  Mat sm = id;
  for (int m = 1; m < sp.coxeter_number; ++m) {
    sm = sm * sp.s_op;
    acc += 2.0 * f[size_t(m)] * sm;
  }
  acc *= cd(0.0, 1.0 / (2 * pi));
  if (include_constant) acc += (id + sp.s_op) * (id - sp.s_op).inverse();
  return acc;
}

inline Mat elliptic_r0_eval(const EllipticKernelSpec& sp, double u, bool include_constant = true) {
  detail::check_real_support(u);
  return elliptic_r0_eval_complex(sp, cd(u), include_constant);
}

/// Scalar elliptic kernel on the s-eigenline with eigenvalue omega.
inline cd elliptic_r0_scalar(const EllipticKernelSpec& sp, cd omega, cd u, bool include_constant = true) {
  const auto f = detail::elliptic_terms(sp, u);
  cd acc = f[0], wm = 1.0;
  for (int m = 1; m < sp.coxeter_number; ++m) {
    wm *= omega;
    acc += 2.0 * wm * f[size_t(m)];
  }
  acc *= cd(0.0, 1.0 / (2 * pi));
  if (include_constant) acc += (1.0 + omega) / (1.0 - omega);
  return acc;
}

struct KernelMatch {
  double residual = 0.0;
  int worst_mode = 0;
  cd worst_eigenvalue;
  std::map<int, std::vector<cd>> coefficients;  // extracted c_n per eigenvalue, singular part restored
};

/// Fourier coefficients of each eigenline kernel by trapezoid quadrature after removing i cot(pi u),
/// compared with (1 + p^n w)/(1 - p^n w) - sign(n).
inline KernelMatch kernel_match(const EllipticKernelSpec& sp, int modes, int samples = 2048) {
  Eigen::ComplexEigenSolver<Mat> es(sp.s_op);
  const Vec w = es.eigenvalues();
  KernelMatch out;
  std::vector<cd> g(static_cast<size_t>(samples));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    for (int k = 0; k < samples; ++k) {
      const double u = (k + 0.5) / samples;
      g[size_t(k)] = elliptic_r0_scalar(sp, w(i), cd(u)) - cd(0.0, 1.0) / std::tan(pi * u);
    }
    for (int n = -modes; n <= modes; ++n) {
      cd c = 0.0;
      for (int k = 0; k < samples; ++k) c += g[size_t(k)] * std::exp(cd(0.0, -2 * pi * n * (k + 0.5) / samples));
      c /= double(samples);
      const cd q = sp.p.power(n) * w(i);
      const double sg = double((n > 0) - (n < 0));
      const double dev = std::abs(c - ((1.0 + q) / (1.0 - q) - sg));
      if (!std::isfinite(dev)) throw std::runtime_error("quadrature did not converge");
      out.coefficients[n].push_back(c + sg);
      if (dev > out.residual) {
        out.residual = dev;
        out.worst_mode = n;
        out.worst_eigenvalue = w(i);
      }
    }
  }
  return out;
}

inline double kernel_match_residual(const EllipticKernelSpec& sp, int modes) { return kernel_match(sp, modes).residual; }

/// |E(u) - s E(u + xi/h)|, the analytic form of the one-step functional equation (z -> pz).
inline double functional_equation_residual(const EllipticKernelSpec& sp, double u) {
  detail::check_real_support(u);
  const cd shift = sp.params.xi / double(sp.coxeter_number);
  const Mat a = elliptic_r0_eval_complex(sp, cd(u));
  const Mat b = elliptic_r0_eval_complex(sp, cd(u) + shift);
  return max_abs(Mat(a - sp.s_op * b));
}

/// |E(1 - u) + E(u)*| with the adjoint on h.
inline double elliptic_skew_residual(const RootSystemData& d, const EllipticKernelSpec& sp, double u) {
  return max_abs(Mat(elliptic_r0_eval(sp, 1.0 - u) + adjoint_h(d, elliptic_r0_eval(sp, u))));
}

/// CSV samples: u, then real and imaginary parts of the entries of r0(u).
inline void write_elliptic_csv(std::ostream& os, const EllipticKernelSpec& sp, int samples) {
  const Eigen::Index l = sp.s_op.rows();
  os << "u";
  for (Eigen::Index i = 0; i < l; ++i)
    for (Eigen::Index j = 0; j < l; ++j) os << ",re_" << i << j << ",im_" << i << j;
  os << "\n";
  os.precision(17);
  for (int k = 0; k < samples; ++k) {
    const double u = (k + 0.5) / samples;
    const Mat v = elliptic_r0_eval(sp, u);
    os << u;
    for (Eigen::Index i = 0; i < l; ++i)
      for (Eigen::Index j = 0; j < l; ++j) os << "," << v(i, j).real() + 0.0 << "," << v(i, j).imag() + 0.0;
    os << "\n";
  }
}

}  // namespace dsr
