#pragma once

// r-matrix together with a twist sigma = Ad(g0).

#include "dsr/rmatrix.hpp"

namespace dsr {

class PoissonContext {
 public:
  explicit PoissonContext(RMatrix r) : PoissonContext(std::move(r), Mat()) {}

  /// Twist by conjugation with g0; an empty matrix means sigma = id.
  PoissonContext(RMatrix r, Mat g0) : r_(std::move(r)) {
    const int n = r_.n();
    g0_ = g0.size() ? std::move(g0) : Mat::Identity(n, n);
    g0_inv_ = g0_.inverse();
    const auto& alg = r_.algebra();
    sigma_ = alg.ad_group(g0_);
    sigma_inv_ = alg.ad_group(g0_inv_);
    compat_residual_ = std::max(max_abs(Mat(sigma_ * r_.op() - r_.op() * sigma_)),
                                max_abs(Mat(sigma_.transpose() * alg.gram() * sigma_ - alg.gram())));
    if (compat_residual_ > 1e-10) throw std::invalid_argument("twist does not commute with r or does not preserve the form");
    const Mat& g = alg.gram();
    b_r_ = r_.op().transpose() * g;
    b_sp_ = (sigma_ * r_.op_plus()).transpose() * g;
    b_ms_ = (r_.op_minus() * sigma_inv_).transpose() * g;
  }

  static PoissonContext coxeter(int l) {
    auto d = build_type_a(l);
    return PoissonContext(RMatrix::from_theta(d, coxeter_operator(d).matrix));
  }

  /// Coxeter r-matrix twisted by conjugation with diag(d) (det 1 expected).
  static PoissonContext coxeter_twisted(int l, const Vec& d) {
    auto rd = build_type_a(l);
    return PoissonContext(RMatrix::from_theta(rd, coxeter_operator(rd).matrix), Mat(d.asDiagonal()));
  }

  const RMatrix& r() const { return r_; }
  const SlAlgebra& algebra() const { return r_.algebra(); }
  int n() const { return r_.n(); }
  bool twisted() const { return max_abs(Mat(g0_ - Mat::Identity(n(), n()))) > 0.0; }
  double compat_residual() const { return compat_residual_; }

  const Mat& twist_element() const { return g0_; }
  Mat sigma_group(const Mat& g) const { return g0_ * g * g0_inv_; }
  Mat sigma_inv_group(const Mat& g) const { return g0_inv_ * g * g0_; }
  Mat sigma(const Mat& x) const { return sigma_group(x); }
  Mat sigma_inv(const Mat& x) const { return sigma_inv_group(x); }
  const Mat& sigma_op() const { return sigma_; }
  const Mat& sigma_inv_op() const { return sigma_inv_; }

  /// Context with the inverse twist.
  PoissonContext inverse_twist() const { return PoissonContext(r_, g0_inv_); }

  // bilinear forms a^T B b used by the reduced bracket
  const Mat& form_r() const { return b_r_; }
  const Mat& form_sigma_r_plus() const { return b_sp_; }
  const Mat& form_r_minus_sigma_inv() const { return b_ms_; }

 private:
  RMatrix r_;
  Mat g0_, g0_inv_;
  Mat sigma_, sigma_inv_;
  Mat b_r_, b_sp_, b_ms_;
  double compat_residual_ = 0.0;
};

}  // namespace dsr
