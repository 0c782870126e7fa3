#pragma once

// Polynomials in matrix entries with exact partial derivatives.

#include "dsr/lie.hpp"

#include <map>
#include <vector>

namespace dsr {

class PolyFn {
 public:
  /// (variable, exponent) pairs sorted by variable.
  using Monomial = std::vector<std::pair<int, int>>;
  using Terms = std::map<Monomial, cd>;

  PolyFn() = default;
  PolyFn(cd c) {  // NOLINT(google-explicit-constructor)
    if (c != cd(0.0)) terms_[{}] = c;
  }
  PolyFn(double c) : PolyFn(cd(c)) {}  // NOLINT(google-explicit-constructor)

  static PolyFn variable(int v) {
    PolyFn p;
    p.terms_[{{v, 1}}] = 1.0;
    return p;
  }

  /// Entry (i,j) of the slot-th n x n matrix argument.
  static PolyFn entry(int i, int j, int n, int slot = 0) { return variable(slot * n * n + i * n + j); }

  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int k = 0;
      for (const auto& ve : m) k += ve.second;
      d = std::max(d, k);
    }
    return d;
  }

  /// One past the largest variable index.
  int variable_bound() const {
    int b = 0;
    for (const auto& [m, c] : terms_)
      if (!m.empty()) b = std::max(b, m.back().first + 1);
    return b;
  }

  PolyFn& operator+=(const PolyFn& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PolyFn& operator-=(const PolyFn& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  PolyFn& operator*=(cd s) {
    if (s == cd(0.0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend PolyFn operator+(PolyFn a, const PolyFn& b) { return a += b; }
  friend PolyFn operator-(PolyFn a, const PolyFn& b) { return a -= b; }
  friend PolyFn operator-(PolyFn a) { return a *= cd(-1.0); }
  friend PolyFn operator*(PolyFn a, cd s) { return a *= s; }
  friend PolyFn operator*(cd s, PolyFn a) { return a *= s; }

  friend PolyFn operator*(const PolyFn& a, const PolyFn& b) {
    PolyFn out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
    return out;
  }

  cd evaluate(const std::vector<cd>& vals) const {
    cd acc = 0.0;
    for (const auto& [m, c] : terms_) acc += c * monomial_value(m, vals);
    return acc;
  }

  PolyFn derivative(int v) const {
    PolyFn out;
    for (const auto& [m, c] : terms_)
      for (size_t k = 0; k < m.size(); ++k)
        if (m[k].first == v) {
          Monomial d = m;
          const int e = d[k].second;
          if (e == 1)
            d.erase(d.begin() + long(k));
          else
            d[k].second = e - 1;
          out.add_term(d, c * double(e));
        }
    return out;
  }

  /// All first partials at a point, exact up to rounding.
  std::vector<cd> partials(const std::vector<cd>& vals) const {
    std::vector<cd> g(vals.size(), 0.0);
    for (const auto& [m, c] : terms_)
      for (size_t k = 0; k < m.size(); ++k) {
        cd prod = c * double(m[k].second);
        for (size_t q = 0; q < m.size(); ++q) {
          const int e = q == k ? m[q].second - 1 : m[q].second;
          for (int t = 0; t < e; ++t) prod *= vals[size_t(m[q].first)];
        }
        g[size_t(m[k].first)] += prod;
      }
    return g;
  }

  /// Drop terms with |coefficient| <= tol.
  void prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = std::abs(it->second) <= tol ? terms_.erase(it) : std::next(it);
  }

 private:
  void add_term(const Monomial& m, cd c) {
    if (c == cd(0.0)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == cd(0.0)) terms_.erase(it);
    }
  }

  static Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back(b[j++]);
      } else {
        out.emplace_back(a[i].first, a[i].second + b[j].second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  static cd monomial_value(const Monomial& m, const std::vector<cd>& vals) {
    cd v = 1.0;
    for (const auto& [var, e] : m)
      for (int t = 0; t < e; ++t) v *= vals[size_t(var)];
    return v;
  }

  Terms terms_;
};

/// Row-major entries of one or more matrices, the variable layout used by PolyFn::entry.
inline std::vector<cd> entries_of(const Mat& x) {
  std::vector<cd> v(size_t(x.size()));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v[size_t(i * x.cols() + j)] = x(i, j);
  return v;
}

inline std::vector<cd> entries_of(const Mat& x, const Mat& y) {
  auto v = entries_of(x);
  auto w = entries_of(y);
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

inline Mat matrix_from_entries(const std::vector<cd>& v, int n, int slot = 0) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[size_t(slot * n * n + i * n + j)];
  return m;
}

inline PolyFn trace_poly(int n, int slot = 0) {
  PolyFn p;
  for (int i = 0; i < n; ++i) p += PolyFn::entry(i, i, n, slot);
  return p;
}

/// tr(x^2) in the entries of x.
inline PolyFn trace_square_poly(int n, int slot = 0) {
  PolyFn p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p += PolyFn::entry(i, j, n, slot) * PolyFn::entry(j, i, n, slot);
  return p;
}

/// Entries of the matrix product of two entry arrays (row-major, n x n).
template <class T>
std::vector<T> matmul_entries(const std::vector<T>& a, const std::vector<T>& b, int n) {
  std::vector<T> c(size_t(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[size_t(i * n + j)] += a[size_t(i * n + k)] * b[size_t(k * n + j)];
  return c;
}

/// phi with variable v replaced by subst[v].
inline PolyFn compose(const PolyFn& phi, const std::vector<PolyFn>& subst) {
  PolyFn out;
  for (const auto& [m, c] : phi.terms()) {
    PolyFn t(c);
    for (const auto& [var, e] : m)
      for (int k = 0; k < e; ++k) t = t * subst[size_t(var)];
    out += t;
  }
  return out;
}

/// Determinant of an entry array by cofactor expansion along the first row.
template <class T>
T determinant_entries(const std::vector<T>& a, int n) {
  if (n == 1) return a[0];
  T out{};
  for (int j = 0; j < n; ++j) {
    std::vector<T> minor;
    minor.reserve(size_t((n - 1) * (n - 1)));
    for (int i = 1; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (k != j) minor.push_back(a[size_t(i * n + k)]);
    T term = a[size_t(j)] * determinant_entries(minor, n - 1);
    if (j % 2)
      out -= term;
    else
      out += term;
  }
  return out;
}

/// Adjugate of an entry array; equals the inverse when det = 1.
template <class T>
std::vector<T> adjugate_entries(const std::vector<T>& a, int n) {
  std::vector<T> adj(size_t(n * n));
  if (n == 1) {
    adj[0] = T(1.0);
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<T> minor;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (r != i && c != j) minor.push_back(a[size_t(r * n + c)]);
      T v = determinant_entries(minor, n - 1);
      if ((i + j) % 2) v = T(0.0) - v;
      adj[size_t(j * n + i)] = v;
    }
  return adj;
}

}  // namespace dsr
