// Run configuration: a flat JSON object, validated strictly.
//
//   {
//     "modes": 2, "epsilon": 5e5, "pumps": [5e5, 5e5],
//     "t_max_us": 10, "dt_us": 0.01, "path": "analytic"
//   }
//
// Keys: modes, chi, epsilon, pumps, cutoff, path, t_max_us, dt_us, out_dir,
// tol, initial. Only dt_us (0.01), cutoff (4), tol (1e-10), path (analytic),
// out_dir (".") and initial (see default_initial_state) have defaults.
// chi is required for path "full" only.

#pragma once

#include "qscissors/closed_form.hpp"
#include "qscissors/fock.hpp"
#include "qscissors/rwa.hpp"
#include "qscissors/sources.hpp"

#include <json.hpp>

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscissors {

enum class ComputationPath { Analytic, TruncatedOde, Full };

inline const char* path_name(ComputationPath p) {
  switch (p) {
    case ComputationPath::Analytic:
      return "analytic";
    case ComputationPath::TruncatedOde:
      return "truncated-ode";
    case ComputationPath::Full:
      return "full";
  }
  return "?";
}

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error("config: `" + key + "`: " + message), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

inline ComputationPath parse_path(const std::string& s) {
  if (s == "analytic") return ComputationPath::Analytic;
  if (s == "truncated-ode") return ComputationPath::TruncatedOde;
  if (s == "full") return ComputationPath::Full;
  throw ConfigError("path", "expected one of analytic, truncated-ode, full; got \"" + s + "\"");
}

struct RunConfig {
  std::size_t modes = 0;
  std::vector<double> chi;  // empty unless given
  double epsilon = 0.0;
  std::vector<double> pumps;
  std::size_t cutoff = 4;
  ComputationPath path = ComputationPath::Analytic;
  double t_max_us = 0.0;
  double dt_us = 0.01;
  double tol = 1e-10;
  std::string out_dir = ".";
  std::optional<Occupation> initial;
};

/// Checks cross-field constraints. Called by parse_config and again after
/// command-line overrides.
inline void validate_config(const RunConfig& c) {
  if (c.modes != 2 && c.modes != 3) throw ConfigError("modes", "must be 2 or 3");
  if (!std::isfinite(c.epsilon)) throw ConfigError("epsilon", "must be finite");
  if (c.pumps.size() != c.modes)
    throw ConfigError("pumps", "has " + std::to_string(c.pumps.size()) + " entries, expected " +
                                   std::to_string(c.modes));
  for (double a : c.pumps)
    if (!std::isfinite(a)) throw ConfigError("pumps", "entries must be finite");
  if (!c.chi.empty()) {
    if (c.chi.size() != c.modes)
      throw ConfigError("chi", "has " + std::to_string(c.chi.size()) + " entries, expected " + std::to_string(c.modes));
    for (double x : c.chi)
      if (!std::isfinite(x) || x < 0.0) throw ConfigError("chi", "entries must be finite and >= 0");
  }
  if (c.path == ComputationPath::Full && c.chi.empty()) throw ConfigError("chi", "required for path \"full\"");
  if (c.cutoff < 1) throw ConfigError("cutoff", "must be >= 1");
  if (c.path == ComputationPath::Full && c.cutoff < 2) throw ConfigError("cutoff", "must be >= 2 for path \"full\"");
  if (!(c.dt_us > 0.0) || !std::isfinite(c.dt_us)) throw ConfigError("dt_us", "must be positive");
  if (!(c.t_max_us >= c.dt_us) || !std::isfinite(c.t_max_us)) throw ConfigError("t_max_us", "must be >= dt_us");
  if (!(c.tol > 0.0 && c.tol <= 1e-3)) throw ConfigError("tol", "must lie in (0, 1e-3]");
  if (c.initial) {
    if (c.initial->size() != c.modes) throw ConfigError("initial", "must have one occupation per mode");
    const std::size_t limit = c.path == ComputationPath::Full ? c.cutoff : 1;
    for (std::size_t n : *c.initial)
      if (n > limit) throw ConfigError("initial", "occupation exceeds the basis cutoff");
  }
}

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  return j.get<double>();
}

inline std::size_t json_count(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(key, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::vector<double> json_numbers(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError(key, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_number(j[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");

  static const std::set<std::string> known = {"modes",    "chi",   "epsilon", "pumps", "cutoff", "path",
                                              "t_max_us", "dt_us", "out_dir", "tol",   "initial"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw ConfigError(key, "unknown key");
  for (const char* key : {"modes", "epsilon", "pumps", "t_max_us"})
    if (!doc.contains(key)) throw ConfigError(key, "missing required key");

  RunConfig c;
  c.modes = detail::json_count(doc["modes"], "modes");
  c.epsilon = detail::json_number(doc["epsilon"], "epsilon");
  c.pumps = detail::json_numbers(doc["pumps"], "pumps");
  c.t_max_us = detail::json_number(doc["t_max_us"], "t_max_us");
  if (doc.contains("chi")) c.chi = detail::json_numbers(doc["chi"], "chi");
  if (doc.contains("cutoff")) c.cutoff = detail::json_count(doc["cutoff"], "cutoff");
  if (doc.contains("dt_us")) c.dt_us = detail::json_number(doc["dt_us"], "dt_us");
  if (doc.contains("tol")) c.tol = detail::json_number(doc["tol"], "tol");
  if (doc.contains("path")) {
    if (!doc["path"].is_string()) throw ConfigError("path", "expected a string");
    c.path = parse_path(doc["path"].get<std::string>());
  }
  if (doc.contains("out_dir")) {
    if (!doc["out_dir"].is_string()) throw ConfigError("out_dir", "expected a string");
    c.out_dir = doc["out_dir"].get<std::string>();
  }
  if (doc.contains("initial")) {
    const auto& j = doc["initial"];
    if (!j.is_array()) throw ConfigError("initial", "expected a list of occupations");
    Occupation occ;
    for (std::size_t i = 0; i < j.size(); ++i) occ.push_back(detail::json_count(j[i], "initial[" + std::to_string(i) + "]"));
    c.initial = occ;
  }
  validate_config(c);
  return c;
}

inline SystemSpec make_spec(const RunConfig& c) {
  SystemSpec spec;
  spec.chi = c.chi.empty() ? std::vector<double>(c.modes, 0.0) : c.chi;
  spec.epsilon = c.epsilon;
  spec.pumps.assign(c.pumps.begin(), c.pumps.end());
  spec.validate();
  return spec;
}

inline StateVector make_initial_state(const RunConfig& c, const FockBasis& basis) {
  if (c.initial) return StateVector::basis_state(basis, *c.initial);
  return default_initial_state(make_spec(c), basis);
}

/// Closed-form model matching the configured coupler, or ConfigError when
/// no closed form covers it.
inline AnalyticModel select_model(const RunConfig& c) {
  validate_config(c);
  const double e = c.epsilon;
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  std::optional<AnalyticModel> model;
  if (c.modes == 2) {
    const double a1 = c.pumps[0], a2 = c.pumps[1];
    if (a1 == 0.0 && a2 == 0.0 && e > 0.0)
      model = TwoModeNoPump{e};
    else if (a1 > 0.0 && a2 == 0.0 && same(a1, e))
      model = TwoModeSinglePump{a1};
    else if (a1 > 0.0 && e > 0.0 && same(a1, a2))
      model = TwoModeTwoPump{a1, e};
  } else if (e > 0.0 && same(c.pumps[0], e) && same(c.pumps[1], e) && same(c.pumps[2], e)) {
    model = ThreeModeSymmetric{e};
  }
  if (!model)
    throw ConfigError("pumps",
                      "no closed form for this coupler (closed forms exist for: two modes unpumped, single pump "
                      "equal to epsilon, two equal pumps; three modes with every pump equal to epsilon); use path "
                      "truncated-ode or full");
  if (c.initial) {
    const StateVector expected = model_initial_state(*model);
    const FockBasis qubits(c.modes, 1);
    if (expected.amplitudes() != StateVector::basis_state(qubits, *c.initial).amplitudes())
      throw ConfigError("initial", "the closed form for this coupler starts from a different state");
  }
  return *model;
}

inline VarianceSource make_source(const RunConfig& c) {
  switch (c.path) {
    case ComputationPath::Analytic:
      return analytic_source(select_model(c));
    case ComputationPath::TruncatedOde: {
      const FockBasis qubits(c.modes, 1);
      return ode_source(make_spec(c), 1, make_initial_state(c, qubits), c.tol);
    }
    case ComputationPath::Full: {
      const FockBasis basis(c.modes, c.cutoff);
      return spectral_source(make_spec(c), c.cutoff, make_initial_state(c, basis));
    }
  }
  throw ConfigError("path", "unsupported");
}

}  // namespace qscissors
