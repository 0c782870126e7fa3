#pragma once

// The r-matrix r = P_nbar - P_n + r0 P_h, its halves, the dual bracket and the double.

#include "dsr/cartan_weyl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dsr {

/// r0 = (1 + theta)(1 - theta)^{-1}.
inline Mat cayley(const Mat& theta) {
  const auto l = theta.rows();
  const Mat one = Mat::Identity(l, l);
  return (one + theta) * (one - theta).inverse();
}

class RMatrix {
 public:
  /// From theta in End h; validates unitarity and invertibility of 1 - theta.
  static RMatrix from_theta(const RootSystemData& d, const Mat& theta) {
    const int l = d.rank;
    if (theta.rows() != l || theta.cols() != l) throw std::invalid_argument("theta has wrong size");
    if (unitarity_residual(d, theta) > 1e-10) throw std::invalid_argument("theta is not unitary for the form on h");
    const Mat one = Mat::Identity(l, l);
    if (std::abs((theta - one).determinant()) < 1e-12) throw std::invalid_argument("det(theta - 1) vanishes");
    RMatrix r(d, cayley(theta));
    r.theta_ = theta;
    return r;
  }

  /// Arbitrary Cartan part, no validation.
  static RMatrix from_r0(const RootSystemData& d, const Mat& r0) { return RMatrix(d, r0); }

  /// Adds an arbitrary operator on coordinates (used for negative controls).
  RMatrix perturbed(const Mat& extra) const {
    RMatrix r = *this;
    r.op_ += extra;
    r.theta_.reset();
    return r;
  }

  const SlAlgebra& algebra() const { return alg_; }
  const RootSystemData& root_data() const { return data_; }
  const Mat& r0() const { return r0_; }
  const std::optional<Mat>& theta() const { return theta_; }
  int n() const { return alg_.n(); }

  Mat r0_plus() const { return 0.5 * (r0_ + Mat::Identity(r0_.rows(), r0_.cols())); }
  Mat r0_minus() const { return 0.5 * (r0_ - Mat::Identity(r0_.rows(), r0_.cols())); }

  const Mat& op() const { return op_; }
  Mat op_plus() const { return 0.5 * (op_ + Mat::Identity(op_.rows(), op_.cols())); }
  Mat op_minus() const { return 0.5 * (op_ - Mat::Identity(op_.rows(), op_.cols())); }

  Mat apply(const Mat& x) const { return alg_.matrix(op_ * alg_.coords(x)); }
  Mat plus(const Mat& x) const { return alg_.matrix(op_plus() * alg_.coords(x)); }
  Mat minus(const Mat& x) const { return alg_.matrix(op_minus() * alg_.coords(x)); }

 private:
  RMatrix(const RootSystemData& d, const Mat& r0) : data_(d), alg_(d.rank + 1), r0_(r0) {
    op_ = alg_.operator_of([&](const Mat& x) {
      Mat out = strictly_lower(x) - strictly_upper(x);
      out += alg_.h_matrix(r0_ * alg_.h_coords(diagonal_part(x)));
      return out;
    });
  }

  RootSystemData data_;
  SlAlgebra alg_;
  Mat r0_;
  Mat op_;
  std::optional<Mat> theta_;
};

inline Mat apply_r(const RMatrix& r, const Mat& x) { return r.apply(x); }

/// max over basis pairs of |[rX,rY] - r([rX,Y] + [X,rY]) + [X,Y]| for an operator on coordinates.
inline double mcybe_residual(const SlAlgebra& alg, const Mat& op) {
  const int d = alg.dim();
  std::vector<Mat> b(d), rb(d);
  for (int a = 0; a < d; ++a) {
    b[a] = alg.basis(a);
    rb[a] = alg.matrix(op.col(a));
  }
  double res = 0.0;
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      const Mat inner = commutator(rb[a], b[c]) + commutator(b[a], rb[c]);
      const Mat v = commutator(rb[a], rb[c]) - alg.matrix(op * alg.coords(inner)) + commutator(b[a], b[c]);
      res = std::max(res, max_abs(v));
    }
  return res;
}

inline double mcybe_residual(const RMatrix& r) { return mcybe_residual(r.algebra(), r.op()); }

/// Skew perturbation X -> eps (<X,A> B - <X,B> A) with A = H_1, B = E_1n + E_n1.
/// Perturbations inside End h never break mCYBE, so this one mixes h with root spaces.
inline Mat leak_perturbation(const SlAlgebra& alg, double eps) {
  const Mat a = alg.basis(alg.offdiag_count());
  const int n = alg.n();
  Mat b = Mat::Zero(n, n);
  b(0, n - 1) = 1.0;
  b(n - 1, 0) = 1.0;
  return alg.operator_of([&](const Mat& x) { return Mat(eps * (alg.pair(x, a) * b - alg.pair(x, b) * a)); });
}

inline Mat dual_bracket(const RMatrix& r, const Mat& x, const Mat& y) {
  return 0.5 * (commutator(r.apply(x), y) + commutator(x, r.apply(y)));
}

struct CheckItem {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool lower_bound = false;  // negative control: passes when residual exceeds tolerance
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  double max_residual() const {
    double m = 0.0;
    for (const auto& i : items)
      if (!i.lower_bound) m = std::max(m, i.residual);
    return m;
  }
  void add(std::string name, double residual, double tol) {
    items.push_back({std::move(name), residual, tol, residual <= tol});
  }
  void add_control(std::string name, double residual, double floor) {
    items.push_back({std::move(name), residual, floor, residual > floor, true});
  }
  const CheckItem* find(const std::string& name) const {
    for (const auto& i : items)
      if (i.name == name) return &i;
    return nullptr;
  }
};

/// theta_r on h, read from the Cartan images of r+ and r-.
inline Mat induced_theta(const RMatrix& r) {
  const auto& alg = r.algebra();
  const int l = alg.rank();
  Mat mp(l, l), mm(l, l);
  for (int j = 0; j < l; ++j) {
    const Mat h = alg.h_matrix(Vec::Unit(l, j));
    mp.col(j) = alg.h_coords(diagonal_part(r.plus(h)));
    mm.col(j) = alg.h_coords(diagonal_part(r.minus(h)));
  }
  return mp * mm.inverse();
}

inline double skewness_residual(const RMatrix& r) {
  const auto& alg = r.algebra();
  return max_abs(Mat(r.op().transpose() * alg.gram() + alg.gram() * r.op()));
}

inline CheckReport bd_structure_checks(const RMatrix& r) {
  const auto& alg = r.algebra();
  const auto& data = r.root_data();
  const int d = alg.dim();
  const Mat opp = r.op_plus(), opm = r.op_minus();
  CheckReport rep;

  rep.add("skew", skewness_residual(r), 1e-12);
  rep.add("r_plus_minus_r_minus", max_abs(Mat(opp - opm - Mat::Identity(d, d))), 1e-12);
  rep.add("r_plus_adjoint", max_abs(Mat(alg.adjoint(opp) + opm)), 1e-12);

  // kernels and images: Ker r+ = n, Im r+ = bbar, Ker r- = nbar, Im r- = b
  double ker_p = 0, ker_m = 0, im_p = 0, im_m = 0;
  for (int a = 0; a < d; ++a) {
    const Mat x = alg.basis(a);
    const Mat xp = r.plus(x), xm = r.minus(x);
    if (max_abs(strictly_lower(x)) == 0.0 && max_abs(diagonal_part(x)) == 0.0) ker_p = std::max(ker_p, max_abs(xp));
    if (max_abs(strictly_upper(x)) == 0.0 && max_abs(diagonal_part(x)) == 0.0) ker_m = std::max(ker_m, max_abs(xm));
    im_p = std::max(im_p, max_abs(strictly_upper(xp)));
    im_m = std::max(im_m, max_abs(strictly_lower(xm)));
  }
  rep.add("ker_r_plus_is_n", ker_p, 0.0);
  rep.add("ker_r_minus_is_nbar", ker_m, 0.0);
  rep.add("im_r_plus_in_bbar", im_p, 0.0);
  rep.add("im_r_minus_in_b", im_m, 0.0);
  const int bdim = d - alg.offdiag_count() / 2;
  Eigen::FullPivLU<Mat> lup(opp), lum(opm);
  lup.setThreshold(1e-10);
  lum.setThreshold(1e-10);
  rep.add("rank_r_plus_is_dim_b", std::abs(double(lup.rank() - bdim)), 0.0);
  rep.add("rank_r_minus_is_dim_b", std::abs(double(lum.rank() - bdim)), 0.0);

  // homomorphisms r+- : (g, [,]_*) -> g
  std::vector<Mat> b(d);
  for (int a = 0; a < d; ++a) b[a] = alg.basis(a);
  double hom = 0.0, jac = 0.0;
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      const Mat br = dual_bracket(r, b[a], b[c]);
      hom = std::max(hom, max_abs(Mat(r.plus(br) - commutator(r.plus(b[a]), r.plus(b[c])))));
      hom = std::max(hom, max_abs(Mat(r.minus(br) - commutator(r.minus(b[a]), r.minus(b[c])))));
    }
  rep.add("r_pm_homomorphism", hom, 1e-11);

  // Jacobi identity of the dual bracket
  for (int a = 0; a < d; ++a)
    for (int c = a + 1; c < d; ++c)
      for (int e = c + 1; e < d; ++e) {
        const Mat v = dual_bracket(r, b[a], dual_bracket(r, b[c], b[e])) +
                      dual_bracket(r, b[c], dual_bracket(r, b[e], b[a])) +
                      dual_bracket(r, b[e], dual_bracket(r, b[a], b[c]));
        jac = std::max(jac, max_abs(v));
      }
  rep.add("dual_bracket_jacobi", jac, 1e-11);

  const Mat th = induced_theta(r);
  rep.add("theta_r_unitary", unitarity_residual(data, th), 1e-12);

  // h = n^perp closed under the dual bracket
  double hclosed = 0.0;
  for (int a = alg.offdiag_count(); a < d; ++a)
    for (int c = alg.offdiag_count(); c < d; ++c) {
      const Mat v = dual_bracket(r, b[a], b[c]);
      hclosed = std::max(hclosed, max_abs(Mat(v - diagonal_part(v))));
    }
  rep.add("h_closed_under_dual_bracket", hclosed, 1e-12);
  return rep;
}

/// Distances of theta_r from theta and from theta^{-1} (informational).
struct InducedThetaComparison {
  Mat theta_r;
  double distance_to_theta = 0.0;
  double distance_to_theta_inverse = 0.0;
};

inline InducedThetaComparison compare_induced_theta(const RMatrix& r) {
  InducedThetaComparison c;
  c.theta_r = induced_theta(r);
  if (r.theta()) {
    c.distance_to_theta = max_abs(Mat(c.theta_r - *r.theta()));
    c.distance_to_theta_inverse = max_abs(Mat(c.theta_r - r.theta()->inverse()));
  }
  return c;
}

// ---- the double d = g + g ----

struct DoubleElement {
  Mat first;
  Mat second;
};

inline cd double_pairing(const DoubleElement& a, const DoubleElement& b) {
  return (a.first * b.first).trace() - (a.second * b.second).trace();
}

inline DoubleElement embed_diagonal(const Mat& x) { return {x, x}; }

inline DoubleElement embed_dual(const RMatrix& r, const Mat& x) { return {r.plus(x), r.minus(x)}; }

/// r_d = [[r, -2 r+], [2 r-, -r]] on pair coordinates.
inline Mat build_double_r(const RMatrix& r) {
  const int d = r.algebra().dim();
  Mat rd(2 * d, 2 * d);
  rd.topLeftCorner(d, d) = r.op();
  rd.topRightCorner(d, d) = -2.0 * r.op_plus();
  rd.bottomLeftCorner(d, d) = 2.0 * r.op_minus();
  rd.bottomRightCorner(d, d) = -r.op();
  return rd;
}

/// Membership in the image of g*: X+ in bbar, X- in b, h-parts related by theta_r.
inline double dual_membership_residual(const RMatrix& r, const DoubleElement& x) {
  const auto& alg = r.algebra();
  double res = std::max(max_abs(strictly_upper(x.first)), max_abs(strictly_lower(x.second)));
  const Vec hp = alg.h_coords(diagonal_part(x.first));
  const Vec hm = alg.h_coords(diagonal_part(x.second));
  res = std::max(res, max_abs(Vec(hp - induced_theta(r) * hm)));
  return res;
}

inline CheckReport double_checks(const RMatrix& r) {
  const auto& alg = r.algebra();
  const int d = alg.dim();
  CheckReport rep;
  const Mat rd = build_double_r(r);
  std::vector<Mat> b(d);
  for (int a = 0; a < d; ++a) b[a] = alg.basis(a);

  double iso_g = 0.0, iso_gs = 0.0, canon = 0.0, member = 0.0;
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      iso_g = std::max(iso_g, std::abs(double_pairing(embed_diagonal(b[a]), embed_diagonal(b[c]))));
      iso_gs = std::max(iso_gs, std::abs(double_pairing(embed_dual(r, b[a]), embed_dual(r, b[c]))));
      canon = std::max(canon, std::abs(double_pairing(embed_diagonal(b[a]), embed_dual(r, b[c])) - alg.pair(b[a], b[c])));
    }
  for (int a = 0; a < d; ++a) member = std::max(member, dual_membership_residual(r, embed_dual(r, b[a])));
  rep.add("g_isotropic", iso_g, 1e-12);
  rep.add("gstar_isotropic", iso_gs, 1e-12);
  rep.add("canonical_pairing", canon, 1e-12);
  rep.add("gstar_membership", member, 1e-12);
  // g* is a subalgebra of d
  double sub = 0.0;
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      const DoubleElement x = embed_dual(r, b[a]), y = embed_dual(r, b[c]);
      const DoubleElement z{commutator(x.first, y.first), commutator(x.second, y.second)};
      sub = std::max(sub, dual_membership_residual(r, z));
    }
  rep.add("gstar_subalgebra", sub, 1e-11);

  // mCYBE for r_d with componentwise bracket
  double cy = 0.0;
  auto pair_of = [&](const Vec& v) { return DoubleElement{alg.matrix(v.head(d)), alg.matrix(v.tail(d))}; };
  auto coords_of = [&](const DoubleElement& x) {
    Vec v(2 * d);
    v.head(d) = alg.coords(x.first);
    v.tail(d) = alg.coords(x.second);
    return v;
  };
  auto br = [](const DoubleElement& x, const DoubleElement& y) {
    return DoubleElement{commutator(x.first, y.first), commutator(x.second, y.second)};
  };
  for (int a = 0; a < 2 * d; ++a)
    for (int c = 0; c < 2 * d; ++c) {
      const DoubleElement x = pair_of(Vec::Unit(2 * d, a)), y = pair_of(Vec::Unit(2 * d, c));
      const DoubleElement rx = pair_of(rd.col(a)), ry = pair_of(rd.col(c));
      const DoubleElement i1 = br(rx, y), i2 = br(x, ry);
      const Vec inner = coords_of(i1) + coords_of(i2);
      const DoubleElement rin = pair_of(rd * inner);
      const DoubleElement t1 = br(rx, ry), t3 = br(x, y);
      cy = std::max(cy, max_abs(Mat(t1.first - rin.first + t3.first)));
      cy = std::max(cy, max_abs(Mat(t1.second - rin.second + t3.second)));
    }
  rep.add("double_mcybe", cy, 1e-12);
  return rep;
}

}  // namespace dsr
