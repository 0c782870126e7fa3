#pragma once

// Root data of type A_l, Weyl group action on h, group representatives,
// Bruhat cells and the element f.

#include "dsr/lie.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace dsr {

struct RootSystemData {
  int rank = 0;
  IMat cartan_matrix;
  std::vector<int> symmetrizers;
  Mat form_h;      // (H_i, H_j) = a_ij / d_j
  Mat form_hstar;  // (alpha_i, alpha_j) = d_i a_ij
  int coxeter_number = 0;
};

inline RootSystemData build_type_a(int l) {
  if (l < 1) throw std::invalid_argument("rank must be at least 1");
  RootSystemData d;
  d.rank = l;
  d.cartan_matrix = IMat::Zero(l, l);
  for (int i = 0; i < l; ++i) {
    d.cartan_matrix(i, i) = 2;
    if (i + 1 < l) d.cartan_matrix(i, i + 1) = d.cartan_matrix(i + 1, i) = -1;
  }
  d.symmetrizers.assign(l, 1);
  d.form_h = Mat(l, l);
  d.form_hstar = Mat(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      d.form_h(i, j) = double(d.cartan_matrix(i, j)) / d.symmetrizers[j];
      d.form_hstar(i, j) = double(d.symmetrizers[i] * d.cartan_matrix(i, j));
    }
  d.coxeter_number = l + 1;
  return d;
}

/// Transpose with respect to form_h.
inline Mat adjoint_h(const RootSystemData& d, const Mat& a) {
  return d.form_h.inverse() * a.transpose() * d.form_h;
}

inline Mat adjoint_h(const Mat& form_h, const Mat& a) { return form_h.inverse() * a.transpose() * form_h; }

struct WeylOperator {
  Mat matrix;
  std::vector<int> word;  // 1-based simple reflection indices, leftmost factor first
};

/// s_i H_j = H_j - a_ji H_i in the coroot basis (i is 1-based).
inline Mat simple_reflection_matrix(const RootSystemData& d, int i) {
  const int l = d.rank;
  if (i < 1 || i > l) throw std::out_of_range("simple reflection index");
  Mat s = Mat::Identity(l, l);
  for (int j = 0; j < l; ++j) s(i - 1, j) -= double(d.cartan_matrix(j, i - 1));
  return s;
}

inline WeylOperator weyl_word(const RootSystemData& d, const std::vector<int>& word) {
  WeylOperator w{Mat::Identity(d.rank, d.rank), word};
  for (int i : word) w.matrix = w.matrix * simple_reflection_matrix(d, i);
  return w;
}

inline std::vector<int> coxeter_word(int l) {
  std::vector<int> w(l);
  std::iota(w.begin(), w.end(), 1);
  return w;
}

/// Reduced word for w_0 in type A_l: (1)(2 1)(3 2 1)...
inline std::vector<int> longest_word(int l) {
  std::vector<int> w;
  for (int k = 1; k <= l; ++k)
    for (int j = k; j >= 1; --j) w.push_back(j);
  return w;
}

inline WeylOperator coxeter_operator(const RootSystemData& d) { return weyl_word(d, coxeter_word(d.rank)); }

inline double unitarity_residual(const RootSystemData& d, const Mat& w) {
  return max_abs(adjoint_h(d, w) * w - Mat::Identity(d.rank, d.rank));
}

struct GroupRepresentative {
  Mat matrix;
  std::vector<int> word;
  std::string label;
};

/// Block [[0,1],[-1,0]] in rows/cols (i, i+1), i 1-based.
inline Mat simple_representative(int n, int i) {
  Mat s = Mat::Identity(n, n);
  s(i - 1, i - 1) = 0.0;
  s(i, i) = 0.0;
  s(i - 1, i) = 1.0;
  s(i, i - 1) = -1.0;
  return s;
}

/// Product of simple representatives along the given word.
inline GroupRepresentative word_representative(int n, const std::vector<int>& word, std::string label = {}) {
  GroupRepresentative g{Mat::Identity(n, n), word, std::move(label)};
  for (int i : word) g.matrix = g.matrix * simple_representative(n, i);
  return g;
}

inline GroupRepresentative coxeter_representative(int l) {
  return word_representative(l + 1, coxeter_word(l), "s");
}

/// Lift of s^{-1} along the reversed word s_l ... s_1.
inline GroupRepresentative coxeter_inverse_representative(int l) {
  auto w = coxeter_word(l);
  std::reverse(w.begin(), w.end());
  return word_representative(l + 1, w, "s^-1");
}

inline GroupRepresentative longest_representative(int l) {
  return word_representative(l + 1, longest_word(l), "w0");
}

/// Coroot-basis matrix of h -> g h g^{-1}.
inline Mat conjugation_on_h(const Mat& g) {
  const int n = int(g.rows());
  SlAlgebra alg(n);
  const int l = n - 1;
  const Mat gi = g.inverse();
  Mat m(l, l);
  for (int j = 0; j < l; ++j) m.col(j) = alg.h_coords(g * alg.h_matrix(Vec::Unit(l, j)) * gi);
  return m;
}

/// Bruhat normal form M = left * monomial * right with left, right upper unipotent.
struct BruhatForm {
  Mat left;
  Mat monomial;
  Mat right;
  std::vector<int> pivot_column;  // row i has its pivot in column pivot_column[i]
};

inline BruhatForm bruhat_decompose(const Mat& m, double rel_tol = 1e-12) {
  const int n = int(m.rows());
  Mat a = m;
  Mat lv = Mat::Identity(n, n);  // lv * m * ru = monomial
  Mat ru = Mat::Identity(n, n);
  const double scale = std::max(1.0, max_abs(m));
  std::vector<int> piv(n, -1);
  std::vector<bool> used(n, false);
  for (int i = n - 1; i >= 0; --i) {
    int j = -1;
    for (int c = 0; c < n; ++c)
      if (!used[c] && std::abs(a(i, c)) > rel_tol * scale) {
        j = c;
        break;
      }
    if (j < 0) throw std::domain_error("singular matrix has no Bruhat form");
    used[j] = true;
    piv[i] = j;
    const cd p = a(i, j);
    for (int c = j + 1; c < n; ++c) {
      const cd k = a(i, c) / p;
      if (k == cd(0.0)) continue;
      a.col(c) -= k * a.col(j);
      ru.col(c) -= k * ru.col(j);
    }
    for (int r = 0; r < i; ++r) {
      const cd k = a(r, j) / p;
      if (k == cd(0.0)) continue;
      a.row(r) -= k * a.row(i);
      lv.row(r) -= k * lv.row(i);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      if (c != piv[i]) a(i, c) = 0.0;
  return {lv.inverse(), a, ru.inverse(), piv};
}

/// Permutation pattern of a monomial matrix: row i -> column.
inline std::vector<int> monomial_pattern(const Mat& w) {
  const int n = int(w.rows());
  std::vector<int> p(n, -1);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c)
      if (std::abs(w(i, c)) > 0.5) p[i] = c;
  return p;
}

/// Distance of the Bruhat monomial of m from the representative w (0 means m in N w N).
inline double double_coset_residual(const Mat& m, const Mat& w) {
  return max_abs(bruhat_decompose(m).monomial - w);
}

inline bool same_bruhat_cell(const Mat& m, const Mat& w) {
  return bruhat_decompose(m).pivot_column == monomial_pattern(w);
}

struct FElement {
  GroupRepresentative f;
  std::vector<cd> coefficients;  // w0 u_i w0^{-1} = 1 + c_i E_{i+1,i}
  double coset_residual = 0.0;   // distance from N s^{-1} N
  bool lower_unipotent = false;
  bool in_cell = false;
};

inline FElement build_f_element(const RootSystemData& d) {
  const int l = d.rank, n = l + 1;
  const Mat w0 = longest_representative(l).matrix;
  const Mat w0i = w0.inverse();
  FElement out;
  std::vector<Mat> conj(l);
  for (int i = 1; i <= l; ++i) {
    cd c = 1.0;
    Mat e = Mat::Identity(n, n);
    e(i, i - 1) = c;
    const Mat si = simple_representative(n, i);
    if (double_coset_residual(e, si) > 1e-12) {
      c = -1.0;
      e(i, i - 1) = c;
      if (double_coset_residual(e, si) > 1e-12)
        throw std::runtime_error("no sign choice puts w0 u_i w0^-1 in N s_i N");
    }
    const Mat u = w0i * e * w0;
    if (max_abs(strictly_lower(u)) > 1e-12) throw std::runtime_error("u_i is not in N");
    conj[i - 1] = e;
    out.coefficients.push_back(c);
  }
  Mat x = Mat::Identity(n, n);
  for (int i = l; i >= 1; --i) x = x * (w0i * conj[i - 1] * w0);
  Mat f = w0 * x * w0i;
  out.f = {f, {}, "f"};
  out.lower_unipotent = max_abs(strictly_upper(f)) <= 1e-12 &&
                        max_abs(Mat(f.diagonal()) - Mat::Ones(n, 1)) <= 1e-12;
  const Mat sinv = coxeter_inverse_representative(l).matrix;
  out.coset_residual = double_coset_residual(f, sinv);
  out.in_cell = same_bruhat_cell(f, sinv);
  return out;
}

/// Positive roots (i<j as E_ij) sent to negative roots by s.
inline std::vector<std::pair<int, int>> nprime_roots(int l) {
  const int n = l + 1;
  const Mat s = coxeter_representative(l).matrix;
  const Mat si = s.inverse();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = 1.0;
      const Mat q = s * e * si;
      if (max_abs(Mat(q.triangularView<Eigen::Upper>())) < 1e-12) out.emplace_back(i, j);
    }
  return out;
}

}  // namespace dsr
