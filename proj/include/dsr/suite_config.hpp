#pragma once

// Suite configuration: flat key = value files and the tolerance profile.

#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dsr {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& msg)
      : std::runtime_error(format(line, field, msg)), line_(line), field_(std::move(field)), message_(msg) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& msg) {
    std::string out = "config error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " (" + field + ")";
    return out + ": " + msg;
  }
  int line_;
  std::string field_;
  std::string message_;
};

/// Named tolerances; every acceptance threshold lives here.
class ToleranceProfile {
 public:
  static ToleranceProfile defaults() {
    ToleranceProfile t;
    t.values_ = {
        {"mcybe", 1e-11},
        {"control_floor", 1e-3},
        {"r_pm_homomorphism", 1e-11},
        {"theta_r_unitary", 1e-12},
        {"jacobi", 1e-9},
        {"reduction", 1e-9},
        {"reassembly", 1e-10},
        {"cartan_exponential", 1e-12},
        {"uniqueness", 1e-9},
        {"first_class", 1e-9},
        {"dual_pair", 1e-10},
        {"k0", 1e-12},
        {"k_modes", 1e-10},
        {"a_equation", 1e-10},
        {"iso_transport", 1e-8},
        {"kernel_match", 1e-8},
        {"functional_equation", 1e-8},
        {"slice_bracket", 1e-8},
        {"anz", 1e-10},
    };
    return t;
  }

  double get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw std::out_of_range("unknown tolerance '" + name + "'");
    return it->second;
  }

  void set(const std::string& name, double v) {
    if (!values_.count(name)) throw std::out_of_range("unknown tolerance '" + name + "'");
    if (!(v >= 0.0)) throw std::invalid_argument("tolerance '" + name + "' must be non-negative");
    values_[name] = v;
  }

  /// Applies "name=value,name=value".
  void apply(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("tolerance override '" + item + "' lacks '='");
      const std::string key = trim(item.substr(0, eq));
      set(key, parse(item.substr(eq + 1), key));
    }
  }

  const std::map<std::string, double>& values() const { return values_; }

  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  }

 private:
  static double parse(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("tolerance '" + key + "' is not a number");
    }
    if (pos != t.size()) throw std::invalid_argument("tolerance '" + key + "' has trailing characters");
    return v;
  }
  std::map<std::string, double> values_;
};

inline constexpr const char* tolerance_env_var = "DSR_TOLERANCES";

/// Defaults overridden by the DSR_TOLERANCES environment variable, if set.
inline ToleranceProfile tolerance_profile_from_env() {
  auto t = ToleranceProfile::defaults();
  if (const char* env = std::getenv(tolerance_env_var)) {
    try {
      t.apply(env);
    } catch (const std::exception& e) {
      throw ConfigError(0, tolerance_env_var, e.what());
    }
  }
  return t;
}

enum class ThetaChoice { coxeter, dilation, drinfeld };

struct SuiteConfig {
  int rank = 2;
  ThetaChoice theta = ThetaChoice::coxeter;
  double dilation_u = 0.5;  // only for theta = dilation(u)
  double p = 0.1;
  int truncation = 32;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerance_overrides;
  std::string output;

  static constexpr int max_rank = 6;
  static constexpr int max_truncation = 64;

  void validate() const {
    if (rank < 1 || rank > max_rank) throw ConfigError(0, "rank", "must lie in [1, " + std::to_string(max_rank) + "]");
    if (!(p > 0.0 && p < 1.0)) throw ConfigError(0, "p", "must satisfy 0 < p < 1");
    if (truncation < 4 || truncation > max_truncation)
      throw ConfigError(0, "truncation", "must lie in [4, " + std::to_string(max_truncation) + "]");
    if (theta == ThetaChoice::dilation && !(dilation_u > 0.0 && dilation_u < 1.0))
      throw ConfigError(0, "theta", "dilation(u) needs 0 < u < 1");
    auto t = ToleranceProfile::defaults();
    for (const auto& [k, v] : tolerance_overrides) {
      try {
        t.set(k, v);
      } catch (const std::exception& e) {
        throw ConfigError(0, "tolerance." + k, e.what());
      }
    }
  }

  std::string theta_string() const {
    switch (theta) {
      case ThetaChoice::coxeter: return "coxeter";
      case ThetaChoice::drinfeld: return "drinfeld";
      case ThetaChoice::dilation: {
        std::ostringstream os;
        os.precision(17);
        os << "dilation(" << dilation_u << ")";
        return os.str();
      }
    }
    return {};
  }

  ToleranceProfile tolerances(ToleranceProfile base) const {
    for (const auto& [k, v] : tolerance_overrides) base.set(k, v);
    return base;
  }
};

namespace detail {
inline double parse_double_field(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(line, key, "trailing characters in '" + v + "'");
  return out;
}

inline long long parse_int_field(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  long long out;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, key, "expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(line, key, "trailing characters in '" + v + "'");
  return out;
}
}  // namespace detail

inline void set_theta(SuiteConfig& c, const std::string& v, int line = 0) {
  if (v == "coxeter") {
    c.theta = ThetaChoice::coxeter;
  } else if (v == "drinfeld") {
    c.theta = ThetaChoice::drinfeld;
  } else if (v.rfind("dilation(", 0) == 0 && v.back() == ')') {
    c.theta = ThetaChoice::dilation;
    c.dilation_u = detail::parse_double_field(v.substr(9, v.size() - 10), line, "theta");
  } else {
    throw ConfigError(line, "theta", "expected coxeter, drinfeld or dilation(u), got '" + v + "'");
  }
}

/// Flat key = value format; '#' starts a comment. Keys: rank, theta, p, truncation, seed, output,
/// tolerance.<name>. The result is validated.
inline SuiteConfig parse_config(std::istream& in) {
  SuiteConfig c;
  std::string raw;
  int line = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = ToleranceProfile::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected key = value");
    const std::string key = ToleranceProfile::trim(text.substr(0, eq));
    const std::string val = ToleranceProfile::trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "", "empty key");
    if (val.empty()) throw ConfigError(line, key, "empty value");
    if (seen.count(key)) throw ConfigError(line, key, "duplicate key (first at line " + std::to_string(seen[key]) + ")");
    seen[key] = line;
    if (key == "rank") {
      c.rank = int(detail::parse_int_field(val, line, key));
    } else if (key == "theta") {
      set_theta(c, val, line);
    } else if (key == "p") {
      c.p = detail::parse_double_field(val, line, key);
    } else if (key == "truncation") {
      c.truncation = int(detail::parse_int_field(val, line, key));
    } else if (key == "seed") {
      const long long s = detail::parse_int_field(val, line, key);
      if (s < 0) throw ConfigError(line, key, "must be non-negative");
      c.seed = std::uint64_t(s);
    } else if (key == "output") {
      c.output = val;
    } else if (key.rfind("tolerance.", 0) == 0) {
      c.tolerance_overrides[key.substr(10)] = detail::parse_double_field(val, line, key);
    } else {
      throw ConfigError(line, key, "unknown key");
    }
    try {
      c.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(line, e.field(), e.message());
    }
  }
  c.validate();
  return c;
}

inline SuiteConfig parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

}  // namespace dsr
