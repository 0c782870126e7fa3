#pragma once

// Seeded random samples of algebra and group elements.

#include "dsr/polyfn.hpp"

#include <cstdint>
#include <random>

namespace dsr {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  /// Uniform in the unit square centred at 0, times scale.
  cd complex_unit(double scale = 1.0) { return scale * cd(uniform(-0.5, 0.5), uniform(-0.5, 0.5)); }

  Mat traceless(int n, double scale = 1.0) {
    Mat x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = complex_unit(scale);
    return dsr::traceless(x);
  }

  /// exp of a random traceless matrix, renormalized to determinant 1.
  Mat group(int n, double scale = 1.0) {
    Mat g = expm(traceless(n, scale));
    const cd det = g.determinant();
    return g / std::pow(det, 1.0 / n);
  }

  Mat upper_unipotent(int n, double scale = 1.0) {
    Mat u = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) u(i, j) = complex_unit(scale);
    return u;
  }

  Mat lower_unipotent(int n, double scale = 1.0) { return upper_unipotent(n, scale).transpose(); }

  Vec h_vector(int l, double scale = 1.0) {
    Vec v(l);
    for (int k = 0; k < l; ++k) v(k) = complex_unit(scale);
    return v;
  }

  /// Random quadratic polynomial in the entries of `slots` matrices of size n, plus linear terms.
  PolyFn quadratic(int n, int slots = 1, int terms = 6) {
    const int nv = slots * n * n;
    std::uniform_int_distribution<int> pick(0, nv - 1);
    PolyFn p;
    for (int t = 0; t < terms; ++t) p += complex_unit(2.0) * PolyFn::variable(pick(gen_)) * PolyFn::variable(pick(gen_));
    for (int t = 0; t < 2; ++t) p += complex_unit(2.0) * PolyFn::variable(pick(gen_));
    return p;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dsr
