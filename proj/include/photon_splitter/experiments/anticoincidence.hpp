#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "photon_splitter/experiments/params.hpp"
#include "photon_splitter/experiments/report.hpp"
#include "photon_splitter/fock/beam_splitter.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"
#include "photon_splitter/measurement/click.hpp"
#include "photon_splitter/parallel.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

struct AnticoincidenceParams {
  double eta_c = 1.0;
  double eta_d = 1.0;
  std::int64_t n_trials = 100000;
  InputKind input = InputKind::photon;
  int cutoff = kDefaultCutoff;
  unsigned n_threads = 1;
};

// One photon onto a 50:50 splitter, a click detector on each output port.
// The anticorrelation figure alpha = P(both)/(P(c) P(d)) is zero exactly when
// the two detectors never fire together.
inline ExperimentReport run_anticoincidence(const AnticoincidenceParams& p,
                                            std::uint64_t seed) {
  if (!(p.eta_c >= 0.0 && p.eta_c <= 1.0) || !(p.eta_d >= 0.0 && p.eta_d <= 1.0))
    throw DomainError("efficiencies must lie in [0,1]");
  if (p.n_trials < 1) throw DomainError("n_trials must be >= 1");

  std::vector<int> photons = {1, 0};
  if (p.input == InputKind::two_photon) photons = {2, 0};
  if (p.input == InputKind::vacuum) photons = {0, 0};
  const auto state = apply_two_mode(beam_splitter(0.5, M_PI / 2, p.cutoff),
                                    make_fock_state(photons, p.cutoff), 0, 1);
  const auto probs = click_probabilities(state, {{p.eta_c}, {p.eta_d}});
  const auto cdf = pattern_cdf(probs);

  std::vector<std::uint8_t> patterns(static_cast<std::size_t>(p.n_trials));
  parallel_for(patterns.size(), p.n_threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng = RngStream::derive(seed, i);
      patterns[i] = static_cast<std::uint8_t>(draw_pattern(cdf, rng));
    }
  });

  std::array<std::int64_t, 4> counts{};
  for (const auto pat : patterns) ++counts[pat];
  const double n = static_cast<double>(p.n_trials);
  const double p_both = counts[3] / n;
  const double p_c = (counts[1] + counts[3]) / n;
  const double p_d = (counts[2] + counts[3]) / n;
  const double alpha = p_both > 0.0 ? p_both / (p_c * p_d) : 0.0;
  double alpha_stderr = 0.0;
  if (p_both > 0.0)
    alpha_stderr = alpha * std::sqrt((1.0 - p_both) / (n * p_both) +
                                     (1.0 - p_c) / (n * p_c) +
                                     (1.0 - p_d) / (n * p_d));
  auto rate_stderr = [n](double r) { return std::sqrt(r * (1.0 - r) / n); };

  ExperimentReport report;
  report.name = "anticoincidence";
  report.seed = seed;
  report.config_echo = {{"experiment", "anticoincidence"},
                        {"eta_c", format_double(p.eta_c)},
                        {"eta_d", format_double(p.eta_d)},
                        {"n_trials", format_int(p.n_trials)},
                        {"input", input_label(p.input)},
                        {"cutoff", format_int(p.cutoff)}};

  Table patterns_table;
  patterns_table.name = "pattern_counts";
  patterns_table.columns = {{"pattern", {}}, {"count", {}}, {"frequency", {}},
                            {"probability", {}}};
  for (int pat = 0; pat < 4; ++pat) {
    patterns_table.columns[0].values.push_back(pat);
    patterns_table.columns[1].values.push_back(static_cast<double>(counts[pat]));
    patterns_table.columns[2].values.push_back(counts[pat] / n);
    patterns_table.columns[3].values.push_back(probs[pat]);
  }
  report.tables.push_back(std::move(patterns_table));

  report.summary = {{"counts_c_only", static_cast<double>(counts[1])},
                    {"counts_d_only", static_cast<double>(counts[2])},
                    {"counts_both", static_cast<double>(counts[3])},
                    {"counts_none", static_cast<double>(counts[0])},
                    {"rate_c_only", counts[1] / n},
                    {"rate_c_only_stderr", rate_stderr(counts[1] / n)},
                    {"rate_d_only", counts[2] / n},
                    {"rate_d_only_stderr", rate_stderr(counts[2] / n)},
                    {"alpha", alpha},
                    {"alpha_stderr", alpha_stderr}};
  return report;
}

}  // namespace psplit
