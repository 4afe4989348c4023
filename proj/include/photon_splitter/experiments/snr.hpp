#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "photon_splitter/experiments/params.hpp"
#include "photon_splitter/experiments/report.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/measurement/loss.hpp"
#include "photon_splitter/parallel.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

struct SnrParams {
  std::int64_t n_samples = 100000;
  double collection_efficiency = 1.0;
  InputKind input = InputKind::photon;  // photon or vacuum control
  int cutoff = kDefaultCutoff;
  unsigned n_threads = 1;
  int n_bootstrap = 200;
};

namespace detail {

inline double sample_variance(const std::vector<double>& xs) {
  double m = 0.0;
  for (const double x : xs) m += x;
  m /= double(xs.size());
  double acc = 0.0;
  for (const double x : xs) acc += (x - m) * (x - m);
  return acc / double(xs.size() - 1);
}

}  // namespace detail

// Homodyne variance of a matched-mode photon wave packet against the
// zero-point variance of the empty mode: SNR = (Var1 - Var0)/Var0. Loss on
// the signal maps Var1 = 1/2 + eta, so the ideal ratio 2 halves at eta = 1/2.
inline ExperimentReport run_snr_wavepacket(const SnrParams& p, std::uint64_t seed) {
  if (p.n_samples < 10000) throw DomainError("n_samples must be >= 10000");
  if (!(p.collection_efficiency >= 0.0 && p.collection_efficiency <= 1.0))
    throw DomainError("collection_efficiency must lie in [0,1]");
  if (p.input == InputKind::two_photon)
    throw DomainError("input must be photon or vacuum");
  if (p.n_bootstrap < 2) throw DomainError("n_bootstrap must be >= 2");

  const auto vacuum = to_density(make_fock_state({0}, p.cutoff));
  const auto signal_pure =
      make_fock_state({p.input == InputKind::vacuum ? 0 : 1}, p.cutoff);
  const auto signal = attenuate(to_density(signal_pure), p.collection_efficiency);

  const auto signal_table = cached_cdf_table(signal, 0.0, default_grid());
  const auto vacuum_table = cached_cdf_table(vacuum, 0.0, default_grid());

  const std::size_t n = static_cast<std::size_t>(p.n_samples);
  std::vector<double> xs(n), x0(n);
  const std::uint64_t signal_seed = subseed(seed, 0);
  const std::uint64_t vacuum_seed = subseed(seed, 1);
  parallel_for(n, p.n_threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      xs[i] = signal_table->sample(RngStream::derive(signal_seed, i).uniform());
      x0[i] = vacuum_table->sample(RngStream::derive(vacuum_seed, i).uniform());
    }
  });

  const double var_signal = detail::sample_variance(xs);
  const double var_vacuum = detail::sample_variance(x0);
  const double snr = (var_signal - var_vacuum) / var_vacuum;

  // Bootstrap over joint resamples of both records.
  const std::uint64_t boot_seed = subseed(seed, 2);
  Table bootstrap;
  bootstrap.name = "bootstrap";
  bootstrap.columns = {{"replicate", {}}, {"snr", {}}};
  std::vector<double> snr_reps(static_cast<std::size_t>(p.n_bootstrap));
  std::vector<double> rs(n), r0(n);
  for (int rep = 0; rep < p.n_bootstrap; ++rep) {
    RngStream rng = RngStream::derive(boot_seed, rep);
    for (std::size_t i = 0; i < n; ++i)
      rs[i] = xs[static_cast<std::size_t>(rng.uniform() * double(n))];
    for (std::size_t i = 0; i < n; ++i)
      r0[i] = x0[static_cast<std::size_t>(rng.uniform() * double(n))];
    const double v0 = detail::sample_variance(r0);
    snr_reps[rep] = (detail::sample_variance(rs) - v0) / v0;
    bootstrap.columns[0].values.push_back(rep);
    bootstrap.columns[1].values.push_back(snr_reps[rep]);
  }
  double boot_mean = 0.0;
  for (const double v : snr_reps) boot_mean += v;
  boot_mean /= double(snr_reps.size());
  double boot_var = 0.0;
  for (const double v : snr_reps) boot_var += (v - boot_mean) * (v - boot_mean);
  const double snr_stderr = std::sqrt(boot_var / double(snr_reps.size() - 1));

  ExperimentReport report;
  report.name = "snr_wavepacket";
  report.seed = seed;
  report.config_echo = {{"experiment", "snr_wavepacket"},
                        {"n_samples", format_int(p.n_samples)},
                        {"collection_efficiency", format_double(p.collection_efficiency)},
                        {"input", input_label(p.input)},
                        {"cutoff", format_int(p.cutoff)}};
  report.tables.push_back(std::move(bootstrap));
  report.summary = {{"snr", snr},
                    {"snr_stderr", snr_stderr},
                    {"var_signal", var_signal},
                    {"var_vacuum", var_vacuum}};
  return report;
}

}  // namespace psplit
