// dsr: command-line driver for the verification suite and the individual solvers.

#include "dsr/json_io.hpp"
#include "dsr/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dsr;
using json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  int rank = 2;
  double p = 0.1;
  int modes = 32;
  std::uint64_t seed = 42;
  std::string theta = "coxeter";
  std::string config_path;
  std::string out;
};

// Config file first, then any flag given on the command line.
SuiteConfig build_config(const CommonOpts& o, const CLI::App& sub) {
  SuiteConfig c;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError(0, "config", "cannot open '" + o.config_path + "'");
    c = parse_config(in);
  }
  if (sub.count("--rank")) c.rank = o.rank;
  if (sub.count("--p")) c.p = o.p;
  if (sub.count("--modes")) c.truncation = o.modes;
  if (sub.count("--seed")) c.seed = o.seed;
  if (sub.count("--theta")) set_theta(c, o.theta);
  if (sub.count("--out")) c.output = o.out;
  c.validate();
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  os << text;
}

void add_common(CLI::App* sub, CommonOpts& o, bool with_config) {
  sub->add_option("--rank", o.rank, "rank l of sl(l+1)");
  sub->add_option("--p", o.p, "dilation parameter, 0 < p < 1");
  sub->add_option("--modes", o.modes, "mode truncation N");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--theta", o.theta, "coxeter | drinfeld | dilation(u)");
  if (with_config) sub->add_option("--config", o.config_path, "flat key = value config file");
  sub->add_option("--out", o.out, "output file (default stdout)");
}

json matrix_residual(const Mat& m, double residual) {
  json j;
  j["matrix"] = matrix_to_json(m);
  j["residual"] = residual;
  return j;
}

Mat theta_power(int l, int k) {
  const Mat s = suite::coxeter_s(l);
  Mat out = Mat::Identity(l, l);
  const int h = l + 1;
  for (int i = 0; i < ((k % h) + h) % h; ++i) out = out * s;
  return out;
}

int run_verify(const CommonOpts& o, const CLI::App& sub, bool timing, bool quiet) {
  const SuiteConfig c = build_config(o, sub);
  const auto rep = run_suite(c, tolerance_profile_from_env());
  const std::string text = report_json(rep, timing).dump(2) + "\n";
  const bool to_stdout = c.output.empty() || c.output == "-";
  emit(c.output, text);
  if (!quiet) {
    std::ostream& log = to_stdout ? std::cerr : std::cout;
    write_summary(log, rep.acceptance);
    write_summary(log, rep.configured);
  }
  return rep.all_pass() ? 0 : 1;
}

int run_reduce(const CommonOpts& o, const CLI::App& sub, bool timing) {
  const SuiteConfig c = build_config(o, sub);
  VerificationReport rep{c, c.tolerances(tolerance_profile_from_env()), {}, {}};
  rep.configured = suite::reduction_checks(c, rep.tolerances);
  emit(c.output, report_json(rep, timing).dump(2) + "\n");
  return rep.all_pass() ? 0 : 1;
}

int run_factor(const std::string& matrix_text, const std::string& input, const std::string& theta,
               const std::string& out) {
  std::string text = matrix_text;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open '" + input + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (text.empty()) throw std::invalid_argument("factor needs --matrix or --input");
  const Mat x = matrix_from_json(nlohmann::json::parse(text));
  if (x.rows() != x.cols() || x.rows() < 2) throw std::invalid_argument("matrix must be square of size at least 2");
  SuiteConfig c;
  c.rank = int(x.rows()) - 1;
  set_theta(c, theta);
  const auto ctx = suite::selected_context(c);
  auto tf = twisted_factorize(ctx, x);
  json j;
  j["rank"] = c.rank;
  j["theta"] = c.theta_string();
  auto xs = json::array();
  for (Eigen::Index i = 0; i < tf.x.size(); ++i) xs.push_back({tf.x(i).real() + 0.0, tf.x(i).imag() + 0.0});
  j["x"] = xs;
  j["h_plus"] = matrix_to_json(tf.h_plus);
  j["h_minus"] = matrix_to_json(tf.h_minus);
  j["n_plus"] = matrix_to_json(tf.n_plus);
  j["n_minus"] = matrix_to_json(tf.n_minus);
  j["reassembly_residual"] = max_abs(Mat(reassemble(ctx, tf) - x));
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_kernel(const CommonOpts& o, const std::string& kind, int samples) {
  SuiteConfig c;
  c.rank = o.rank;
  c.p = o.p;
  c.truncation = o.modes;
  set_theta(c, o.theta);
  c.validate();
  const auto d = build_type_a(c.rank);
  const Mat s = suite::coxeter_s(c.rank);
  std::ostringstream os;
  if (kind == "k") {
    write_kernel_csv(os, solve_K_modes(d, s, DilationParam(c.p), c.truncation).kernel);
  } else if (kind == "r0") {
    const ModeKernel k = c.theta == ThetaChoice::drinfeld   ? kernel_drinfeld(c.rank, c.truncation)
                         : c.theta == ThetaChoice::dilation ? kernel_theta(s, DilationParam(c.dilation_u), c.truncation)
                                                            : kernel_theta(s, DilationParam(c.p), c.truncation);
    write_kernel_csv(os, k);
  } else {
    if (samples < 1) throw std::invalid_argument("--samples must be positive");
    write_elliptic_csv(os, EllipticKernelSpec::make(s, c.p, c.rank + 1), samples);
  }
  emit(o.out, os.str());
  return 0;
}

int run_solve_k(const CommonOpts& o, const CLI::App& sub, double symmetric) {
  if (o.rank < 1 || o.rank > SuiteConfig::max_rank) throw ConfigError(0, "rank", "out of range");
  const auto d = build_type_a(o.rank);
  const Mat s = suite::coxeter_s(o.rank);
  auto k = solve_K_finite(d, s, symmetric);
  json j;
  j["rank"] = o.rank;
  j["constant"] = matrix_residual(k.value, k.residual);
  if (sub.count("--modes")) {
    SuiteConfig c;
    c.rank = o.rank;
    c.p = o.p;
    c.truncation = o.modes;
    c.validate();
    auto km = solve_K_modes(d, s, DilationParam(c.p), c.truncation);
    j["p"] = c.p;
    j["modes"] = mode_family_to_json(km.kernel.coefficients);
    j["mode_residual"] = km.residual;
    j["failed_modes"] = km.failed_modes;
  }
  emit(o.out, j.dump(2) + "\n");
  return 0;
}

int run_solve_a(const CommonOpts& o, const CLI::App& sub, int a_pow, int b_pow, double p_prime) {
  if (o.rank < 1 || o.rank > SuiteConfig::max_rank) throw ConfigError(0, "rank", "out of range");
  const auto d = build_type_a(o.rank);
  const Mat th = theta_power(o.rank, a_pow), thp = theta_power(o.rank, b_pow);
  json j;
  j["rank"] = o.rank;
  j["theta_power"] = a_pow;
  j["theta_prime_power"] = b_pow;
  auto a = solve_A(d, th, thp);
  j["constant"] = matrix_residual(a.value, a.residual);
  const Mat k = induced_K(a);
  j["induced_K"] = matrix_residual(k, induced_K_residual(d, a, k));
  if (sub.count("--modes")) {
    SuiteConfig c;
    c.rank = o.rank;
    c.p = o.p;
    c.truncation = o.modes;
    c.validate();
    if (!(p_prime > 0.0 && p_prime < 1.0)) throw ConfigError(0, "p-prime", "must satisfy 0 < p' < 1");
    const DilationParam p(c.p);
    ModeFamily t, tp;
    for (int n = -c.truncation; n <= c.truncation; ++n) {
      t[n] = p.power(n) * th;
      tp[n] = std::pow(cd(p_prime), n) * thp;
    }
    auto sol = solve_A_modes(d, t, tp, p, c.truncation);
    j["p"] = c.p;
    j["p_prime"] = p_prime;
    j["modes"] = mode_family_to_json(sol.kernel.coefficients);
    j["mode_residual"] = sol.residual;
    j["failed_modes"] = sol.failed_modes;
  }
  emit(o.out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification driver for twisted r-matrix structures and their reductions"};
  app.require_subcommand(1);

  CommonOpts verify_o, reduce_o, kernel_o, k_o, a_o;
  bool no_timing = false, quiet = false;

  auto* verify = app.add_subcommand("verify", "run the full verification suite, JSON report");
  add_common(verify, verify_o, true);
  verify->add_flag("--no-timing", no_timing, "zero all wall-time fields");
  verify->add_flag("--quiet", quiet, "suppress the PASS/FAIL summary");

  auto* reduce = app.add_subcommand("reduce", "constraint, dual-pair, K and slice residuals, JSON report");
  add_common(reduce, reduce_o, true);
  reduce->add_flag("--no-timing", no_timing, "zero all wall-time fields");

  std::string matrix_text, matrix_file, factor_theta = "coxeter", factor_out;
  auto* factor = app.add_subcommand("factor", "twisted factorization of a group element given as JSON");
  factor->add_option("--matrix", matrix_text, "JSON rows; entries are numbers or [re, im]");
  factor->add_option("--input", matrix_file, "file holding the JSON matrix");
  factor->add_option("--theta", factor_theta, "coxeter | drinfeld");
  factor->add_option("--out", factor_out, "output file (default stdout)");

  std::string kind = "k";
  int samples = 64;
  auto* kernel = app.add_subcommand("kernel", "mode or elliptic kernel samples as CSV");
  add_common(kernel, kernel_o, false);
  kernel->add_option("--kind", kind, "k (K-equation modes) | r0 (r0 modes) | elliptic (theta form)")
      ->check(CLI::IsMember({"k", "r0", "elliptic"}));
  kernel->add_option("--samples", samples, "sample count for --kind elliptic");

  double symmetric = 0.0;
  auto* solve_k = app.add_subcommand("solve-k", "constant K (and modes with --modes) as JSON matrices");
  add_common(solve_k, k_o, false);
  solve_k->add_option("--symmetric", symmetric, "coefficient of the free symmetric part s + s^-1");

  int a_pow = 1, b_pow = 2;
  double p_prime = 0.2;
  auto* solve_a = app.add_subcommand("solve-a", "A between theta = s^a and theta' = s^b as JSON matrices");
  add_common(solve_a, a_o, false);
  solve_a->add_option("--theta-power", a_pow, "a in theta = s^a");
  solve_a->add_option("--theta-prime-power", b_pow, "b in theta' = s^b");
  solve_a->add_option("--p-prime", p_prime, "dilation of theta' for --modes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return run_verify(verify_o, *verify, !no_timing, quiet);
    if (*reduce) return run_reduce(reduce_o, *reduce, !no_timing);
    if (*factor) return run_factor(matrix_text, matrix_file, factor_theta, factor_out);
    if (*kernel) return run_kernel(kernel_o, kind, samples);
    if (*solve_k) return run_solve_k(k_o, *solve_k, symmetric);
    if (*solve_a) return run_solve_a(a_o, *solve_a, a_pow, b_pow, p_prime);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
