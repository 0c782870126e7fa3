#include <gtest/gtest.h>

#include <sstream>

#include "dsr/theta.hpp"

using namespace dsr;

namespace {
EllipticKernelSpec spec_for(int l, double p) {
  auto d = build_type_a(l);
  return EllipticKernelSpec::make(coxeter_operator(d).matrix, p, d.coxeter_number);
}
}  // namespace

TEST(Theta, Periodicity) {
  auto tp = ThetaParams::from_xi(cd(0.1, 0.7));
  const cd u(0.23, 0.05);
  EXPECT_LE(std::abs(theta_eval(tp, u + 1.0) - theta_eval(tp, u)), 1e-12);
}

TEST(Theta, ZeroAtHalfPeriod) {
  auto tp = ThetaParams::from_xi(cd(0.0, 0.8));
  EXPECT_LE(std::abs(theta_eval(tp, 0.5 * tp.xi)), 1e-14);
}

TEST(Theta, QuasiPeriodicity) {
  auto tp = ThetaParams::from_xi(cd(0.2, 0.9));
  for (double x : {0.1, 0.37, 0.8}) {
    const cd u(x, 0.03);
    const cd lhs = theta_eval(tp, u + tp.xi) + std::exp(cd(0.0, -2 * pi) * u) / tp.t * theta_eval(tp, u);
    EXPECT_LE(std::abs(lhs), 1e-10);
  }
}

TEST(Theta, TruncationDoubling) {
  auto a = ThetaParams::from_xi(cd(0.0, 0.3), 6), b = ThetaParams::from_xi(cd(0.0, 0.3), 12);
  const cd u(0.21, 0.0);
  const cd va = theta_eval(a, u), vb = theta_eval(b, u);
  EXPECT_LE(std::abs(va - vb) / std::abs(vb), 4.0 * a.truncation_bound());
}

TEST(ThetaLogDerivative, ProductMatchesFourier) {
  // t = 0.1
  auto tp = ThetaParams::from_xi(cd(0.0, -std::log(0.1) / pi));
  EXPECT_LE(std::abs(tp.t - 0.1), 1e-15);
  EXPECT_LE(std::abs(theta_log_derivative(tp, 0.3) - theta_log_derivative_fourier(tp, 0.3)), 1e-10);
  EXPECT_LE(std::abs(theta_log_derivative(tp, cd(0.3, 0.1)) - theta_log_derivative_fourier(tp, cd(0.3, 0.1))), 1e-10);
}

TEST(ThetaLogDerivative, PeriodicAndOdd) {
  auto tp = ThetaParams::from_xi(cd(0.1, 0.6));
  const cd u(0.27, 0.04);
  EXPECT_LE(std::abs(theta_log_derivative(tp, u + 1.0) - theta_log_derivative(tp, u)), 1e-12);
  EXPECT_LE(std::abs(theta_log_derivative(tp, -u) + theta_log_derivative(tp, u)), 1e-12);
}

TEST(ThetaLogDerivative, NearZeroReported) {
  auto tp = ThetaParams::from_xi(cd(0.0, 0.8));
  EXPECT_THROW(theta_log_derivative(tp, 0.5 * tp.xi + 1e-8), std::domain_error);
}

TEST(Elliptic, RelationAndRankOneSkew) {
  auto sp = spec_for(1, 0.1);
  EXPECT_LE(sp.relation_residual(), 1e-12);
  const Mat v = elliptic_r0_eval(sp, 0.3);
  EXPECT_LE(std::abs(v(0, 0).real()), 1e-12);
}

TEST(Elliptic, SymmetryAndPeriodicity) {
  for (int l = 1; l <= 3; ++l) {
    auto d = build_type_a(l);
    auto sp = spec_for(l, 0.1);
    for (double u : {0.1, 0.3, 0.45, 0.77}) {
      EXPECT_LE(elliptic_skew_residual(d, sp, u), 1e-10);
      EXPECT_LE(max_abs(Mat(elliptic_r0_eval(sp, u + 1.0) - elliptic_r0_eval(sp, u))), 1e-12);
    }
  }
}

TEST(Elliptic, SingularSupportReported) {
  EXPECT_THROW(elliptic_r0_eval(spec_for(2, 0.1), 1.0), std::domain_error);
}

TEST(Elliptic, FourierCoefficientsMatch) {
  for (int l = 1; l <= 3; ++l)
    for (double p : {0.05, 0.1, 0.2}) {
      auto m = kernel_match(spec_for(l, p), 20);
      EXPECT_LE(m.residual, 1e-8) << "l = " << l << " p = " << p << " n = " << m.worst_mode;
    }
}

TEST(Elliptic, ZeroModeCoefficient) {
  auto sp = spec_for(1, 0.1);
  auto m = kernel_match(sp, 0);
  EXPECT_LE(std::abs(m.coefficients.at(0)[0]), 1e-10);
}

TEST(Elliptic, FunctionalEquation) {
  for (int l = 1; l <= 3; ++l) {
    auto sp = spec_for(l, 0.1);
    for (double u : {0.3, 0.61}) EXPECT_LE(functional_equation_residual(sp, u), 1e-8) << "l = " << l;
    const Mat a = elliptic_r0_eval_complex(sp, 0.3), b = elliptic_r0_eval_complex(sp, cd(0.3) + sp.params.xi);
    EXPECT_LE(max_abs(Mat(a - b)), 1e-8);
  }
}

TEST(Elliptic, CsvExport) {
  std::ostringstream os;
  write_elliptic_csv(os, spec_for(1, 0.1), 4);
  const std::string out = os.str();
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 5);
}
