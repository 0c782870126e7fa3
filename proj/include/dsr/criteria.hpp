#pragma once

// The acceptance criteria and the configuration-dependent checks, each returning named residuals.

#include "dsr/ds_reduction.hpp"
#include "dsr/heisenberg.hpp"
#include "dsr/sampling.hpp"
#include "dsr/suite_config.hpp"
#include "dsr/theta.hpp"

#include <chrono>
#include <functional>

namespace dsr {

struct CriterionResult {
  int id = 0;
  std::string name;
  CheckReport checks;
  double seconds = 0.0;
  bool pass() const { return checks.all_pass(); }
};

namespace suite {

inline std::string sl(int l) { return "sl" + std::to_string(l + 1); }

inline Mat coxeter_s(int l) { return coxeter_operator(build_type_a(l)).matrix; }

inline PoissonContext drinfeld_context(int l) {
  auto d = build_type_a(l);
  return PoissonContext(RMatrix::from_theta(d, Mat(-Mat::Identity(l, l))));
}

// twist by conjugation with a diagonal element of determinant one
inline Vec twist_diagonal(int n) {
  Vec d(n);
  cd prod = 1.0;
  for (int i = 0; i + 1 < n; ++i) {
    d(i) = cd(1.0 + 0.3 * (i + 1), 0.2 * i);
    prod *= d(i);
  }
  d(n - 1) = 1.0 / prod;
  return d;
}

/// w (N' s^{-1}) w^{-1} for random N' and w in N.
inline Mat slice_sample(Sampler& rng, int l) {
  const int n = l + 1;
  Mat np = Mat::Identity(n, n);
  for (auto [i, j] : nprime_roots(l)) np(i, j) = rng.complex_unit();
  const Mat w = rng.upper_unipotent(n, 0.5);
  return w * np * coxeter_inverse_representative(l).matrix * w.inverse();
}

inline CriterionResult timed(int id, std::string name, const std::function<void(CheckReport&)>& body) {
  CriterionResult r{id, std::move(name), {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r.checks);
  } catch (const std::exception& e) {
    r.checks.items.push_back({std::string("exception: ") + e.what(), std::numeric_limits<double>::infinity(), 0.0,
                              false});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---- acceptance criteria ----

inline CriterionResult mcybe(const ToleranceProfile& tol, std::uint64_t seed) {
  (void)seed;
  return timed(1, "mcybe", [&](CheckReport& rep) {
    for (int l = 1; l <= 3; ++l) {
      auto r = RMatrix::from_theta(build_type_a(l), coxeter_s(l));
      rep.add(sl(l) + "/coxeter", mcybe_residual(r), tol.get("mcybe"));
      rep.add_control(sl(l) + "/corrupted_r0", mcybe_residual(r.perturbed(leak_perturbation(r.algebra(), 0.1))),
                      tol.get("control_floor"));
    }
  });
}

inline CriterionResult belavin_drinfeld(const ToleranceProfile& tol, std::uint64_t seed) {
  (void)seed;
  return timed(2, "belavin_drinfeld", [&](CheckReport& rep) {
    for (int l = 1; l <= 3; ++l) {
      auto r = RMatrix::from_theta(build_type_a(l), coxeter_s(l));
      for (const auto& it : bd_structure_checks(r).items) {
        double t = it.tolerance;
        if (it.name == "r_pm_homomorphism") t = tol.get("r_pm_homomorphism");
        if (it.name == "theta_r_unitary") t = tol.get("theta_r_unitary");
        rep.add(sl(l) + "/" + it.name, it.residual, t);
      }
    }
  });
}

inline CriterionResult jacobi(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(3, "jacobi", [&](CheckReport& rep) {
    Sampler rng(seed);
    for (int l = 1; l <= 2; ++l) {
      const int n = l + 1;
      auto ctx = PoissonContext::coxeter(l);
      double tau = 0.0, dbl = 0.0;
      for (int k = 0; k < 20; ++k) {
        tau = std::max(tau, jacobi_residual(ctx, rng.quadratic(n), rng.quadratic(n), rng.quadratic(n), rng.group(n)));
        const DoublePoint d{rng.group(n), rng.group(n)};
        dbl = std::max(dbl, jacobi_residual_double(ctx, rng.quadratic(n, 2), rng.quadratic(n, 2),
                                                   rng.quadratic(n, 2), d));
      }
      rep.add(sl(l) + "/tau", tau, tol.get("jacobi"));
      rep.add(sl(l) + "/heisenberg_double", dbl, tol.get("jacobi"));
    }
  });
}

inline CriterionResult reduction(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(4, "reduction_consistency", [&](CheckReport& rep) {
    Sampler rng(seed);
    const std::vector<std::pair<std::string, PoissonContext>> ctxs{
        {"untwisted", PoissonContext::coxeter(2)}, {"twisted", PoissonContext::coxeter_twisted(2, twist_diagonal(3))}};
    for (const auto& [label, ctx] : ctxs) {
      double worst = 0.0;
      for (int k = 0; k < 50; ++k) {
        const DoublePoint d{rng.group(3, 0.5), rng.group(3, 0.5)};
        worst = std::max(worst, reduction_consistency(ctx, rng.quadratic(3), rng.quadratic(3), d).residual);
      }
      rep.add("sl3/" + label, worst, tol.get("reduction"));
    }
  });
}

inline CriterionResult factorization(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(5, "twisted_factorization", [&](CheckReport& rep) {
    Sampler rng(seed);
    for (int l = 1; l <= 3; ++l) {
      const int n = l + 1;
      auto ctx = PoissonContext::coxeter(l);
      double re = 0.0, ce = 0.0, un = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const Mat x = rng.group(n);
        auto tf = twisted_factorize(ctx, x);
        re = std::max(re, max_abs(Mat(reassemble(ctx, tf) - x)) / std::max(1.0, max_abs(x)));
        ce = std::max(ce, max_abs(Mat(tf.h_plus * tf.h_minus.inverse() - expm(tf.x_matrix))));
        auto again = twisted_factorize(ctx, reassemble(ctx, tf));
        un = std::max({un, max_abs(Mat(again.n_plus - tf.n_plus)), max_abs(Mat(again.n_minus - tf.n_minus)),
                       max_abs(Vec(again.x - tf.x))});
      }
      rep.add(sl(l) + "/reassembly", re, tol.get("reassembly"));
      rep.add(sl(l) + "/cartan_exponential", ce, tol.get("cartan_exponential"));
      rep.add(sl(l) + "/uniqueness", un, tol.get("uniqueness"));
    }
  });
}

inline CriterionResult first_class(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(6, "first_class", [&](CheckReport& rep) {
    Sampler rng(seed);
    for (int l = 1; l <= 2; ++l) {
      ConstraintSystem cs(PoissonContext::coxeter(l), build_f_element(build_type_a(l)).f.matrix);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const Mat pt = level_set_point(cs, rng.h_vector(l, 0.6), rng.upper_unipotent(l + 1));
        worst = std::max(worst, first_class_residual(cs, pt));
      }
      rep.add(sl(l) + "/level_set", worst, tol.get("first_class"));
    }
    ConstraintSystem cs(PoissonContext::coxeter(2), build_f_element(build_type_a(2)).f.matrix);
    double generic = 0.0;
    for (int k = 0; k < 5; ++k) generic = std::max(generic, first_class_residual(cs, rng.group(3, 0.5), false));
    rep.add_control("sl3/generic_point", generic, tol.get("control_floor"));
  });
}

inline CriterionResult dual_pair(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(7, "dual_pair", [&](CheckReport& rep) {
    Sampler rng(seed);
    for (int l = 1; l <= 2; ++l) {
      const int n = l + 1;
      ConstraintSystem cs(PoissonContext::coxeter(l), build_f_element(build_type_a(l)).f.matrix);
      double tr = 0.0, tr2 = 0.0;
      for (int k = 0; k < 20; ++k) {
        const Mat x = rng.group(n, 0.5);
        tr = std::max(tr, dual_pair_residual(cs, trace_poly(n), x));
        tr2 = std::max(tr2, dual_pair_residual(cs, trace_square_poly(n), x));
      }
      rep.add(sl(l) + "/trace", tr, tol.get("dual_pair"));
      rep.add(sl(l) + "/trace_square", tr2, tol.get("dual_pair"));
    }
  });
}

inline CriterionResult k_equation(const ToleranceProfile& tol, std::uint64_t seed, double p = 0.1, int modes = 32) {
  (void)seed;
  return timed(8, "k_equation", [&](CheckReport& rep) {
    for (int l = 1; l <= 3; ++l) {
      auto d = build_type_a(l);
      const Mat s = coxeter_s(l);
      auto k = solve_K_finite(d, s);
      rep.add(sl(l) + "/constant", std::max(k.residual, k.commutation), tol.get("k0"));
      if (l == 1) rep.add("sl2/constant_is_zero", max_abs(k.value), 0.0);
      auto km = solve_K_modes(d, s, DilationParam(p), modes);
      rep.add(sl(l) + "/failed_modes", double(km.failed_modes.size()), 0.0);
      rep.add(sl(l) + "/modes", km.residual, tol.get("k_modes"));
    }
  });
}

inline CriterionResult a_equation(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(9, "a_equation_iso", [&](CheckReport& rep) {
    Sampler rng(seed);
    auto d = build_type_a(2);
    const Mat s = coxeter_s(2), s2 = s * s;
    auto a = solve_A(d, s, s2);
    rep.add("sl3/a_equation", a.residual, tol.get("a_equation"));
    PoissonContext src(RMatrix::from_theta(d, s)), tgt(RMatrix::from_theta(d, s2));
    double worst = 0.0;
    for (int k = 0; k < 30; ++k)
      worst = std::max(worst, iso_transport_residual(src, tgt, a.value, rng.quadratic(3), rng.quadratic(3),
                                                     rng.group(3, 0.5)));
    rep.add("sl3/bracket_transport", worst, tol.get("iso_transport"));
  });
}

inline CriterionResult theta_match(const ToleranceProfile& tol, std::uint64_t seed) {
  (void)seed;
  return timed(10, "theta_kernel_match", [&](CheckReport& rep) {
    for (int l = 1; l <= 3; ++l)
      for (double p : {0.05, 0.1, 0.2}) {
        auto sp = EllipticKernelSpec::make(coxeter_s(l), p, l + 1);
        std::ostringstream label;
        label << sl(l) << "/p=" << p;
        rep.add(label.str() + "/fourier", kernel_match(sp, 20).residual, tol.get("kernel_match"));
        double fe = 0.0;
        for (double u : {0.13, 0.37, 0.61, 0.89}) fe = std::max(fe, functional_equation_residual(sp, u));
        rep.add(label.str() + "/functional_equation", fe, tol.get("functional_equation"));
      }
  });
}

inline CriterionResult slice(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(11, "slice_miura", [&](CheckReport& rep) {
    Sampler rng(seed);
    for (int l = 1; l <= 3; ++l) {
      auto r = slice_and_miura_check(PoissonContext::coxeter(l), slice_sample(rng, l), seed);
      rep.add(sl(l) + "/dimension_minus_rank", std::abs(double(r.nprime_dim - l)), 0.0);
      rep.add(sl(l) + "/coordinate_brackets", r.bracket_residual, tol.get("slice_bracket"));
    }
  });
}

/// Printed exponent sign on the simple-root coefficients; the opposite sign is reported alongside.
inline CriterionResult anz(const ToleranceProfile& tol, std::uint64_t seed) {
  return timed(12, "anz_pullback", [&](CheckReport& rep) {
    Sampler rng(seed);
    for (int l = 1; l <= 2; ++l) {
      auto d = build_type_a(l);
      const Mat k = solve_K_finite(d, coxeter_s(l)).value;
      auto ctx = drinfeld_context(l);
      double printed = 0.0, derived = 0.0;
      for (int t = 0; t < 10; ++t) {
        auto c = anz_check(ctx, k, rng.group(l + 1, 0.5));
        printed = std::max(printed, c.printed);
        derived = std::max(derived, c.derived);
      }
      rep.add(sl(l) + "/printed_sign", printed, tol.get("anz"));
      rep.add(sl(l) + "/reversed_sign", derived, tol.get("anz"));
    }
  });
}

using CriterionFn = CriterionResult (*)(const ToleranceProfile&, std::uint64_t);

inline CriterionResult k_equation_default(const ToleranceProfile& tol, std::uint64_t seed) {
  return k_equation(tol, seed);
}

inline const std::vector<CriterionFn>& acceptance_criteria() {
  static const std::vector<CriterionFn> fns{mcybe,       belavin_drinfeld, jacobi,    reduction,
                                            factorization, first_class,    dual_pair, k_equation_default,
                                            a_equation,  theta_match,      slice,     anz};
  return fns;
}

// ---- checks at the configured rank and theta ----

inline Mat selected_theta(const SuiteConfig& c) {
  if (c.theta == ThetaChoice::drinfeld) return -Mat::Identity(c.rank, c.rank);
  return coxeter_s(c.rank);
}

inline PoissonContext selected_context(const SuiteConfig& c) {
  return c.theta == ThetaChoice::drinfeld ? drinfeld_context(c.rank) : PoissonContext::coxeter(c.rank);
}

inline std::string tag(const SuiteConfig& c) { return sl(c.rank) + "/" + c.theta_string(); }

/// Constraints for the selected structure; on the Drinfeld structure they close with the reversed constant K.
inline ConstraintSystem selected_constraints(const SuiteConfig& c) {
  const auto d = build_type_a(c.rank);
  const Mat f = build_f_element(d).f.matrix;
  if (c.theta == ThetaChoice::drinfeld) return ConstraintSystem(drinfeld_context(c.rank), f, Mat(-solve_K_constant(coxeter_s(c.rank))));
  return ConstraintSystem(selected_context(c), f);
}

inline CriterionResult config_r_matrix(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(101, "r_matrix", [&](CheckReport& rep) {
    auto r = RMatrix::from_theta(build_type_a(c.rank), selected_theta(c));
    rep.add(tag(c) + "/mcybe", mcybe_residual(r), tol.get("mcybe"));
    for (const auto& it : bd_structure_checks(r).items) rep.add(tag(c) + "/" + it.name, it.residual, it.tolerance);
    if (c.rank == 1) rep.add(tag(c) + "/r0_vanishes", max_abs(r.r0()), 0.0);
  });
}

inline CriterionResult config_factorization(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(102, "factorization", [&](CheckReport& rep) {
    Sampler rng(c.seed + 102);
    const auto ctx = selected_context(c);
    double re = 0.0, ce = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Mat x = rng.group(c.rank + 1);
      auto tf = twisted_factorize(ctx, x);
      re = std::max(re, max_abs(Mat(reassemble(ctx, tf) - x)) / std::max(1.0, max_abs(x)));
      ce = std::max(ce, max_abs(Mat(tf.h_plus * tf.h_minus.inverse() - expm(tf.x_matrix))));
    }
    rep.add(tag(c) + "/reassembly", re, tol.get("reassembly"));
    rep.add(tag(c) + "/cartan_exponential", ce, tol.get("cartan_exponential"));
  });
}

inline CriterionResult config_first_class(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(103, "first_class", [&](CheckReport& rep) {
    Sampler rng(c.seed + 103);
    const auto cs = selected_constraints(c);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k)
      worst = std::max(worst, first_class_residual(cs, level_set_point(cs, rng.h_vector(c.rank, 0.6),
                                                                       rng.upper_unipotent(c.rank + 1))));
    rep.add(tag(c) + "/level_set", worst, tol.get("first_class"));
  });
}

inline CriterionResult config_loop_kernel(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(104, "loop_kernel", [&](CheckReport& rep) {
    const int l = c.rank;
    const auto d = build_type_a(l);
    const Mat s = coxeter_s(l);
    const DilationParam p(c.p);
    auto km = solve_K_modes(d, s, p, c.truncation);
    rep.add(tag(c) + "/k_failed_modes", double(km.failed_modes.size()), 0.0);
    rep.add(tag(c) + "/k_modes", km.residual, tol.get("k_modes"));
    rep.add(tag(c) + "/k_skew", kernel_skew_residual(d, km.kernel), tol.get("k_modes"));
    ModeKernel r0k = c.theta == ThetaChoice::drinfeld ? kernel_drinfeld(l, c.truncation)
                     : c.theta == ThetaChoice::dilation ? kernel_theta(s, DilationParam(c.dilation_u), c.truncation)
                                                        : kernel_theta(s, p, c.truncation);
    rep.add(tag(c) + "/r0_kernel_skew", kernel_skew_residual(d, r0k), tol.get("k_modes"));
    rep.add(tag(c) + "/r0_kernel_commutes_with_s", kernel_commutation_residual(r0k, s), tol.get("k_modes"));
  });
}

inline CriterionResult config_theta_match(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(105, "theta_kernel_match", [&](CheckReport& rep) {
    auto sp = EllipticKernelSpec::make(coxeter_s(c.rank), c.p, c.rank + 1);
    rep.add(tag(c) + "/fourier", kernel_match(sp, std::min(c.truncation, 20)).residual, tol.get("kernel_match"));
    double fe = 0.0;
    for (double u : {0.13, 0.37, 0.61, 0.89}) fe = std::max(fe, functional_equation_residual(sp, u));
    rep.add(tag(c) + "/functional_equation", fe, tol.get("functional_equation"));
  });
}

inline CriterionResult config_slice(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(106, "slice_miura", [&](CheckReport& rep) {
    Sampler rng(c.seed + 106);
    auto r = slice_and_miura_check(PoissonContext::coxeter(c.rank), slice_sample(rng, c.rank), c.seed);
    rep.add(tag(c) + "/dimension_minus_rank", std::abs(double(r.nprime_dim - c.rank)), 0.0);
    rep.add(tag(c) + "/coordinate_brackets", r.bracket_residual, tol.get("slice_bracket"));
  });
}

inline CriterionResult config_dual_pair(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(107, "dual_pair", [&](CheckReport& rep) {
    Sampler rng(c.seed + 107);
    const int n = c.rank + 1;
    const auto cs = selected_constraints(c);
    double tr = 0.0, tr2 = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Mat x = rng.group(n, 0.5);
      tr = std::max(tr, dual_pair_residual(cs, trace_poly(n), x));
      tr2 = std::max(tr2, dual_pair_residual(cs, trace_square_poly(n), x));
    }
    rep.add(tag(c) + "/trace", tr, tol.get("dual_pair"));
    rep.add(tag(c) + "/trace_square", tr2, tol.get("dual_pair"));
  });
}

inline CriterionResult config_constant_k(const SuiteConfig& c, const ToleranceProfile& tol) {
  return timed(108, "constant_k", [&](CheckReport& rep) {
    auto k = solve_K_finite(build_type_a(c.rank), coxeter_s(c.rank));
    rep.add(tag(c) + "/residual", k.residual, tol.get("k0"));
    rep.add(tag(c) + "/commutes_with_s", k.commutation, tol.get("k0"));
  });
}

inline std::vector<CriterionResult> configured_checks(const SuiteConfig& c, const ToleranceProfile& tol) {
  return {config_r_matrix(c, tol),    config_factorization(c, tol), config_first_class(c, tol),
          config_loop_kernel(c, tol), config_theta_match(c, tol),   config_slice(c, tol)};
}

/// The reduction-related subset, used by the reduce subcommand.
inline std::vector<CriterionResult> reduction_checks(const SuiteConfig& c, const ToleranceProfile& tol) {
  return {config_first_class(c, tol), config_dual_pair(c, tol), config_constant_k(c, tol), config_slice(c, tol)};
}

}  // namespace suite
}  // namespace dsr
