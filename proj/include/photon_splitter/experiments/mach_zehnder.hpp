#pragma once

#include <cmath>
#include <cstdint>
#include <string>
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

struct MachZehnderParams {
  std::vector<double> phases = uniform_phases(16, 2.0 * M_PI);
  std::int64_t n_trials_per_phase = 10000;
  double eta = 1.0;
  int cutoff = kDefaultCutoff;
  unsigned n_threads = 1;
};

namespace detail {

// P(detector on the given port clicks), marginalized over the other port.
inline double port_click_probability(const std::vector<double>& pattern_probs,
                                     int port) {
  double p = 0.0;
  for (std::size_t pat = 0; pat < pattern_probs.size(); ++pat)
    if ((pat >> port) & 1) p += pattern_probs[pat];
  return p;
}

}  // namespace detail

// Single photon through splitter - phase arm - splitter, click detectors on
// both exits. The symmetric port is not assumed: it is the exit the exact
// zero-phase propagation sends the photon to.
inline ExperimentReport run_mach_zehnder(const MachZehnderParams& p,
                                         std::uint64_t seed) {
  if (p.phases.empty()) throw DomainError("phase list must not be empty");
  if (p.n_trials_per_phase < 1) throw DomainError("n_trials_per_phase must be >= 1");
  if (!(p.eta >= 0.0 && p.eta <= 1.0)) throw DomainError("efficiency must lie in [0,1]");

  const auto bs = beam_splitter(0.5, M_PI / 2, p.cutoff);
  const auto input = make_fock_state({1, 0}, p.cutoff);
  const auto interfere = [&](double phase) {
    const auto arm = phase_shift(apply_two_mode(bs, input, 0, 1), 1, phase);
    return apply_two_mode(bs, arm, 0, 1);
  };

  const std::vector<DetectorSpec> ideal = {{1.0}, {1.0}};
  const auto probs_zero = click_probabilities(interfere(0.0), ideal);
  const int sym_port =
      detail::port_click_probability(probs_zero, 1) >=
              detail::port_click_probability(probs_zero, 0)
          ? 1
          : 0;
  const int other_port = 1 - sym_port;

  const std::vector<DetectorSpec> specs = {{p.eta}, {p.eta}};
  const double n = static_cast<double>(p.n_trials_per_phase);
  Table fringes;
  fringes.name = "fringes";
  fringes.columns = {{"phase", {}},          {"count_symmetric", {}},
                     {"count_complementary", {}}, {"count_none", {}},
                     {"p_symmetric", {}},    {"p_symmetric_stderr", {}},
                     {"p_symmetric_exact", {}}};

  double p_max = 0.0, p_min = 1.0, se_at_max = 0.0, se_at_min = 0.0;
  for (std::size_t j = 0; j < p.phases.size(); ++j) {
    const auto pattern_probs = click_probabilities(interfere(p.phases[j]), specs);
    const auto cdf = pattern_cdf(pattern_probs);
    const std::uint64_t phase_seed = subseed(seed, j);

    std::vector<std::uint8_t> patterns(static_cast<std::size_t>(p.n_trials_per_phase));
    parallel_for(patterns.size(), p.n_threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        RngStream rng = RngStream::derive(phase_seed, i);
        patterns[i] = static_cast<std::uint8_t>(draw_pattern(cdf, rng));
      }
    });

    std::int64_t count_sym = 0, count_other = 0, count_none = 0;
    for (const auto pat : patterns) {
      if ((pat >> sym_port) & 1)
        ++count_sym;
      else if ((pat >> other_port) & 1)
        ++count_other;
      else
        ++count_none;
    }

    const double p_sym = count_sym / n;
    const double se = std::sqrt(p_sym * (1.0 - p_sym) / n);
    fringes.columns[0].values.push_back(p.phases[j]);
    fringes.columns[1].values.push_back(static_cast<double>(count_sym));
    fringes.columns[2].values.push_back(static_cast<double>(count_other));
    fringes.columns[3].values.push_back(static_cast<double>(count_none));
    fringes.columns[4].values.push_back(p_sym);
    fringes.columns[5].values.push_back(se);
    fringes.columns[6].values.push_back(
        detail::port_click_probability(pattern_probs, sym_port));

    if (p_sym > p_max) p_max = p_sym, se_at_max = se;
    if (p_sym < p_min) p_min = p_sym, se_at_min = se;
  }

  const double visibility = (p_max + p_min) > 0.0
                                ? (p_max - p_min) / (p_max + p_min)
                                : 0.0;
  const double denom2 = (p_max + p_min) * (p_max + p_min);
  const double visibility_stderr =
      denom2 > 0.0 ? std::sqrt(std::pow(2.0 * p_min * se_at_max, 2) +
                               std::pow(2.0 * p_max * se_at_min, 2)) /
                         denom2
                   : 0.0;

  std::string phase_list;
  for (std::size_t j = 0; j < p.phases.size(); ++j) {
    if (j) phase_list += ",";
    phase_list += format_double(p.phases[j]);
  }

  ExperimentReport report;
  report.name = "mach_zehnder";
  report.seed = seed;
  report.config_echo = {{"experiment", "mach_zehnder"},
                        {"phases", phase_list},
                        {"n_trials_per_phase", format_int(p.n_trials_per_phase)},
                        {"eta", format_double(p.eta)},
                        {"cutoff", format_int(p.cutoff)}};
  report.tables.push_back(std::move(fringes));
  report.summary = {{"visibility", visibility},
                    {"visibility_stderr", visibility_stderr},
                    {"symmetric_port", static_cast<double>(sym_port)},
                    {"p_symmetric_max", p_max},
                    {"p_symmetric_min", p_min}};
  return report;
}

}  // namespace psplit
