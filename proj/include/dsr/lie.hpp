#pragma once

// Matrix realization of sl(n): coordinates, invariant form, projections.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsr {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using IMat = Eigen::MatrixXi;

inline constexpr double pi = 3.14159265358979323846;

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

inline Mat traceless(const Mat& x) {
  const auto n = x.rows();
  return x - (x.trace() / double(n)) * Mat::Identity(n, n);
}

inline Mat strictly_upper(const Mat& x) { return x.triangularView<Eigen::StrictlyUpper>(); }
inline Mat strictly_lower(const Mat& x) { return x.triangularView<Eigen::StrictlyLower>(); }
inline Mat diagonal_part(const Mat& x) { return Mat(x.diagonal().asDiagonal()); }

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// sl(n) with basis E_ij (i != j, row-major) followed by H_k = E_kk - E_{k+1,k+1}.
///
/// Coordinates of a traceless X: X_ij on the off-diagonal slots and
/// c_k = sum_{j<=k} X_jj on the Cartan slots.
class SlAlgebra {
 public:
  explicit SlAlgebra(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("sl(n) needs n >= 2");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) offdiag_.emplace_back(i, j);
    const int d = dim();
    gram_ = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) gram_(a, b) = (basis(a) * basis(b)).trace();
    gram_inv_ = gram_.inverse();
  }

  int n() const { return n_; }
  int rank() const { return n_ - 1; }
  int dim() const { return n_ * n_ - 1; }
  int offdiag_count() const { return int(offdiag_.size()); }
  const std::vector<std::pair<int, int>>& offdiag() const { return offdiag_; }

  Mat basis(int a) const {
    Mat e = Mat::Zero(n_, n_);
    if (a < offdiag_count()) {
      e(offdiag_[a].first, offdiag_[a].second) = 1.0;
    } else {
      const int k = a - offdiag_count();
      e(k, k) = 1.0;
      e(k + 1, k + 1) = -1.0;
    }
    return e;
  }

  /// Coordinates of the traceless projection of x.
  Vec coords(const Mat& x) const {
    Vec c(dim());
    for (int a = 0; a < offdiag_count(); ++a) c(a) = x(offdiag_[a].first, offdiag_[a].second);
    const cd shift = x.trace() / double(n_);
    cd acc = 0.0;
    for (int k = 0; k < rank(); ++k) {
      acc += x(k, k) - shift;
      c(offdiag_count() + k) = acc;
    }
    return c;
  }

  Mat matrix(const Vec& c) const {
    Mat x = Mat::Zero(n_, n_);
    for (int a = 0; a < offdiag_count(); ++a) x(offdiag_[a].first, offdiag_[a].second) = c(a);
    for (int k = 0; k < rank(); ++k) {
      x(k, k) += c(offdiag_count() + k);
      x(k + 1, k + 1) -= c(offdiag_count() + k);
    }
    return x;
  }

  /// Same as coords() for an entry array of any ring type (row-major n*n).
  template <class T>
  std::vector<T> coords_of(const std::vector<T>& x) const {
    std::vector<T> c(dim());
    for (int a = 0; a < offdiag_count(); ++a) c[a] = x[offdiag_[a].first * n_ + offdiag_[a].second];
    T tr{};
    for (int k = 0; k < n_; ++k) tr += x[k * n_ + k];
    T acc{};
    for (int k = 0; k < rank(); ++k) {
      acc += x[k * n_ + k];
      c[offdiag_count() + k] = acc - tr * cd(double(k + 1) / n_);
    }
    return c;
  }

  Vec h_coords(const Mat& x) const { return coords(x).tail(rank()); }
  Mat h_matrix(const Vec& c) const {
    Vec full = Vec::Zero(dim());
    full.tail(rank()) = c;
    return matrix(full);
  }

  const Mat& gram() const { return gram_; }
  const Mat& gram_inv() const { return gram_inv_; }

  cd pair(const Mat& x, const Mat& y) const { return (x * y).trace(); }

  /// Operator matrix (on coordinates) of a linear map given on matrices.
  template <class F>
  Mat operator_of(F&& f) const {
    Mat op(dim(), dim());
    for (int a = 0; a < dim(); ++a) op.col(a) = coords(f(basis(a)));
    return op;
  }

  Mat ad_group(const Mat& g) const {
    const Mat gi = g.inverse();
    return operator_of([&](const Mat& x) { return Mat(g * x * gi); });
  }

  /// Form adjoint of an operator on coordinates.
  Mat adjoint(const Mat& op) const { return gram_inv_ * op.transpose() * gram_; }

  /// Gradient from the linear functional xi -> <xi, grad>, given on basis vectors.
  Mat gradient_from_functional(const Vec& values_on_basis) const {
    return matrix(gram_inv_ * values_on_basis);
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> offdiag_;
  Mat gram_;
  Mat gram_inv_;
};

/// Apply a coordinate operator to a coordinate vector of any ring type.
template <class T>
std::vector<T> apply_op(const Mat& op, const std::vector<T>& v) {
  std::vector<T> out(op.rows());
  for (Eigen::Index i = 0; i < op.rows(); ++i)
    for (Eigen::Index j = 0; j < op.cols(); ++j)
      if (op(i, j) != cd(0.0)) out[i] += op(i, j) * v[j];
  return out;
}

/// a^T B b with a, b of any ring type.
template <class T>
T bilinear(const std::vector<T>& a, const Mat& b_mat, const std::vector<T>& b) {
  T acc{};
  const auto bb = apply_op(b_mat, b);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * bb[i];
  return acc;
}

inline std::vector<cd> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

/// Principal logarithm of a diagonal; rejects the closed negative real axis.
inline Vec principal_log(const Vec& d) {
  Vec out(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    const cd z = d(k);
    if (std::abs(z.imag()) <= 1e-14 * std::abs(z) && z.real() <= 0.0)
      throw std::domain_error("principal logarithm undefined for diagonal entry " + std::to_string(k));
    out(k) = std::log(z);
  }
  return out;
}

inline Mat expm(const Mat& x) { return x.exp(); }

}  // namespace dsr
