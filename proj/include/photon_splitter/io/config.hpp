#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/experiments/params.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"

namespace psplit {

inline const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names = {
      "anticoincidence", "dual_homodyne", "mach_zehnder",
      "qrng",            "snr_wavepacket", "tomography"};
  return names;
}

// One flat bag of every run parameter. The experiment name selects which
// fields a run consumes; the full set is always parsed, validated, echoed,
// and serialized, so parse(serialize(c)) == c holds for every valid config.
struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 42;
  int cutoff = kDefaultCutoff;
  std::string out = "out";
  std::string input = "photon";
  // anticoincidence
  double eta_c = 1.0;
  double eta_d = 1.0;
  std::int64_t n_trials = 100000;
  // mach_zehnder
  std::vector<double> phases = uniform_phases(16, 2.0 * M_PI);
  std::int64_t n_trials_per_phase = 10000;
  double eta = 1.0;
  // dual_homodyne
  std::vector<double> relative_phases = uniform_phases(12, 2.0 * M_PI);
  double phi_bs = M_PI / 2;
  std::int64_t n_pairs_per_point = 100000;
  // snr_wavepacket
  std::int64_t n_samples = 100000;
  double collection_efficiency = 1.0;
  // qrng
  std::int64_t n_bits = 1000000;
  std::string extractor = "none";
  // tomography
  double lambda = 0.1;
  double eta_h = 1.0;
  int n_phases = 12;
  std::int64_t n_per_phase = 10000;
  int n_bins = 50;
  int mle_max_iters = 2000;
  double mle_tol = 1e-7;
  int wigner_points = 81;
  double wigner_range = 4.0;

  bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

struct ConfigEntry {
  std::string value;
  int line = 0;
};

inline double to_double(const std::string& key, const ConfigEntry& e) {
  double v = 0.0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc{} || res.ptr != e.value.data() + e.value.size())
    throw ParseError("invalid number for key '" + key + "'", e.line);
  if (!std::isfinite(v)) throw ValidationError(key, "must be finite");
  return v;
}

template <typename Int>
Int to_integer(const std::string& key, const ConfigEntry& e) {
  Int v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc{} || res.ptr != e.value.data() + e.value.size())
    throw ParseError("invalid integer for key '" + key + "'", e.line);
  return v;
}

inline std::vector<double> to_double_list(const std::string& key, const ConfigEntry& e) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= e.value.size()) {
    const auto comma = e.value.find(',', pos);
    const std::string item =
        trim(e.value.substr(pos, comma == std::string::npos ? std::string::npos
                                                            : comma - pos));
    if (item.empty()) throw ParseError("empty entry in list '" + key + "'", e.line);
    values.push_back(to_double(key, {item, e.line}));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.empty()) throw ValidationError(key, "must not be empty");
  return values;
}

inline const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "collection_efficiency", "cutoff",        "eta",
      "eta_c",                 "eta_d",         "eta_h",
      "experiment",            "extractor",     "input",
      "lambda",                "mle_max_iters", "mle_tol",
      "n_bins",                "n_bits",        "n_pairs_per_point",
      "n_per_phase",           "n_phases",      "n_samples",
      "n_trials",              "n_trials_per_phase",
      "out",                   "phases",        "phi_bs",
      "relative_phases",       "seed",          "wigner_points",
      "wigner_range"};
  return keys;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  std::map<std::string, detail::ConfigEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line = nl == std::string::npos ? text.substr(pos)
                                               : text.substr(pos, nl - pos);
    ++line_no;
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (!detail::known_config_keys().count(key))
      throw ParseError("unknown key '" + key + "'", line_no);
    if (entries.count(key))
      throw ParseError("duplicate key '" + key + "'", line_no);
    entries[key] = {value, line_no};
  }

  RunConfig cfg;
  const auto it = entries.find("experiment");
  if (it == entries.end()) throw ValidationError("experiment", "is required");
  cfg.experiment = it->second.value;
  const auto& names = known_experiments();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
    throw UnknownExperiment(cfg.experiment);

  const auto has = [&](const char* key) { return entries.count(key) > 0; };
  const auto get_double = [&](const char* key, double& slot) {
    if (has(key)) slot = detail::to_double(key, entries.at(key));
  };
  const auto get_i64 = [&](const char* key, std::int64_t& slot) {
    if (has(key)) slot = detail::to_integer<std::int64_t>(key, entries.at(key));
  };
  const auto get_int = [&](const char* key, int& slot) {
    if (has(key)) slot = detail::to_integer<int>(key, entries.at(key));
  };
  const auto get_list = [&](const char* key, std::vector<double>& slot) {
    if (has(key)) slot = detail::to_double_list(key, entries.at(key));
  };

  if (has("seed"))
    cfg.seed = detail::to_integer<std::uint64_t>("seed", entries.at("seed"));
  get_int("cutoff", cfg.cutoff);
  if (has("out")) cfg.out = entries.at("out").value;
  if (has("input")) cfg.input = entries.at("input").value;
  get_double("eta_c", cfg.eta_c);
  get_double("eta_d", cfg.eta_d);
  get_i64("n_trials", cfg.n_trials);
  get_list("phases", cfg.phases);
  get_i64("n_trials_per_phase", cfg.n_trials_per_phase);
  get_double("eta", cfg.eta);
  get_list("relative_phases", cfg.relative_phases);
  get_double("phi_bs", cfg.phi_bs);
  get_i64("n_pairs_per_point", cfg.n_pairs_per_point);
  get_i64("n_samples", cfg.n_samples);
  get_double("collection_efficiency", cfg.collection_efficiency);
  get_i64("n_bits", cfg.n_bits);
  if (has("extractor")) cfg.extractor = entries.at("extractor").value;
  get_double("lambda", cfg.lambda);
  get_double("eta_h", cfg.eta_h);
  get_int("n_phases", cfg.n_phases);
  get_i64("n_per_phase", cfg.n_per_phase);
  get_int("n_bins", cfg.n_bins);
  get_int("mle_max_iters", cfg.mle_max_iters);
  get_double("mle_tol", cfg.mle_tol);
  get_int("wigner_points", cfg.wigner_points);
  get_double("wigner_range", cfg.wigner_range);

  const auto check_unit = [](const char* key, double v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError(key, "must lie in [0, 1]");
  };
  check_unit("eta_c", cfg.eta_c);
  check_unit("eta_d", cfg.eta_d);
  check_unit("eta", cfg.eta);
  check_unit("eta_h", cfg.eta_h);
  check_unit("collection_efficiency", cfg.collection_efficiency);
  if (!(cfg.lambda >= 0.0 && cfg.lambda < 1.0))
    throw ValidationError("lambda", "must lie in [0, 1)");
  if (cfg.cutoff < 1 || cfg.cutoff > 16)
    throw ValidationError("cutoff", "must lie in [1, 16]");
  if (cfg.out.empty()) throw ValidationError("out", "must not be empty");
  if (cfg.n_trials < 1) throw ValidationError("n_trials", "must be >= 1");
  if (cfg.n_trials_per_phase < 1)
    throw ValidationError("n_trials_per_phase", "must be >= 1");
  if (cfg.n_pairs_per_point < 2)
    throw ValidationError("n_pairs_per_point", "must be >= 2");
  if (cfg.n_samples < 10000) throw ValidationError("n_samples", "must be >= 10000");
  if (cfg.n_bits < 10000) throw ValidationError("n_bits", "must be >= 10000");
  if (cfg.n_phases < 3) throw ValidationError("n_phases", "must be >= 3");
  if (cfg.n_per_phase < 1) throw ValidationError("n_per_phase", "must be >= 1");
  if (cfg.n_bins < 20) throw ValidationError("n_bins", "must be >= 20");
  if (cfg.mle_max_iters < 1) throw ValidationError("mle_max_iters", "must be >= 1");
  if (!(cfg.mle_tol > 0.0)) throw ValidationError("mle_tol", "must be > 0");
  if (cfg.wigner_points < 2) throw ValidationError("wigner_points", "must be >= 2");
  if (!(cfg.wigner_range > 0.0)) throw ValidationError("wigner_range", "must be > 0");
  static const std::set<std::string> input_labels = {"photon", "two_photon",
                                                     "vacuum", "heralded"};
  if (!input_labels.count(cfg.input))
    throw ValidationError(
        "input", "must be one of photon, two_photon, vacuum, heralded");
  if (cfg.extractor != "none" && cfg.extractor != "von_neumann")
    throw ValidationError("extractor", "must be none or von_neumann");

  return cfg;
}

inline std::map<std::string, std::string> config_map(const RunConfig& cfg) {
  const auto join = [](const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += format_double(values[i]);
    }
    return s;
  };
  return {{"collection_efficiency", format_double(cfg.collection_efficiency)},
          {"cutoff", format_int(cfg.cutoff)},
          {"eta", format_double(cfg.eta)},
          {"eta_c", format_double(cfg.eta_c)},
          {"eta_d", format_double(cfg.eta_d)},
          {"eta_h", format_double(cfg.eta_h)},
          {"experiment", cfg.experiment},
          {"extractor", cfg.extractor},
          {"input", cfg.input},
          {"lambda", format_double(cfg.lambda)},
          {"mle_max_iters", format_int(cfg.mle_max_iters)},
          {"mle_tol", format_double(cfg.mle_tol)},
          {"n_bins", format_int(cfg.n_bins)},
          {"n_bits", format_int(cfg.n_bits)},
          {"n_pairs_per_point", format_int(cfg.n_pairs_per_point)},
          {"n_per_phase", format_int(cfg.n_per_phase)},
          {"n_phases", format_int(cfg.n_phases)},
          {"n_samples", format_int(cfg.n_samples)},
          {"n_trials", format_int(cfg.n_trials)},
          {"n_trials_per_phase", format_int(cfg.n_trials_per_phase)},
          {"out", cfg.out},
          {"phases", join(cfg.phases)},
          {"phi_bs", format_double(cfg.phi_bs)},
          {"relative_phases", join(cfg.relative_phases)},
          {"seed", format_uint(cfg.seed)},
          {"wigner_points", format_int(cfg.wigner_points)},
          {"wigner_range", format_double(cfg.wigner_range)}};
}

// Canonical text form: every key, sorted, one per line.
inline std::string serialize_config(const RunConfig& cfg) {
  std::string text;
  for (const auto& [key, value] : config_map(cfg))
    text += key + " = " + value + "\n";
  return text;
}

}  // namespace psplit
