#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "photon_splitter/experiments/report.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/parallel.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

enum class Extractor { none, von_neumann };

struct QrngParams {
  std::int64_t n_bits = 1000000;
  Extractor extractor = Extractor::none;
  unsigned n_threads = 1;
};

struct QrngResult {
  ExperimentReport report;
  std::vector<std::uint8_t> bits;
};

// Vacuum-quadrature random bits: sample x on the empty mode, emit sign(x).
// The von Neumann pass maps bit pairs 01 -> 0 and 10 -> 1 and discards the
// rest, which strips any residual bias at a ~4x rate cost.
inline QrngResult run_qrng(const QrngParams& p, std::uint64_t seed) {
  if (p.n_bits < 10000) throw DomainError("n_bits must be >= 10000");

  const auto vacuum = to_density(make_fock_state({0}, kDefaultCutoff));
  const auto table = cached_cdf_table(vacuum, 0.0, default_grid());

  std::vector<std::uint8_t> raw(static_cast<std::size_t>(p.n_bits));
  parallel_for(raw.size(), p.n_threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      raw[i] = table->sample(RngStream::derive(seed, i).uniform()) > 0.0;
  });

  std::vector<std::uint8_t> bits;
  if (p.extractor == Extractor::none) {
    bits = std::move(raw);
  } else {
    bits.reserve(raw.size() / 4 + 16);
    for (std::size_t i = 0; i + 1 < raw.size(); i += 2)
      if (raw[i] != raw[i + 1]) bits.push_back(raw[i]);
  }

  const auto n = static_cast<std::int64_t>(bits.size());
  std::int64_t ones = 0;
  for (const auto b : bits) ones += b;
  const double bias = n > 0 ? double(ones) / double(n) : 0.0;
  const double bias_stderr = n > 0 ? std::sqrt(bias * (1.0 - bias) / double(n)) : 0.0;

  // Wald-Wolfowitz runs test on the emitted stream.
  double runs_z = 0.0;
  if (n >= 2 && ones > 0 && ones < n) {
    std::int64_t runs = 1;
    for (std::int64_t i = 1; i < n; ++i) runs += bits[i] != bits[i - 1];
    const double n0 = double(n - ones), n1 = double(ones);
    const double expected = 2.0 * n0 * n1 / double(n) + 1.0;
    const double variance =
        (expected - 1.0) * (expected - 2.0) / (double(n) - 1.0);
    if (variance > 0.0) runs_z = (double(runs) - expected) / std::sqrt(variance);
  }

  double lag1 = 0.0;
  if (n >= 3) {
    const double m = bias;
    double num = 0.0, den = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double d = double(bits[i]) - m;
      den += d * d;
      if (i + 1 < n) num += d * (double(bits[i + 1]) - m);
    }
    if (den > 0.0) lag1 = num / den;
  }

  Table bit_table;
  bit_table.name = "bits";
  bit_table.columns = {{"bit", {}}};
  bit_table.columns[0].values.assign(bits.begin(), bits.end());

  QrngResult result;
  result.report.name = "qrng";
  result.report.seed = seed;
  result.report.config_echo = {
      {"experiment", "qrng"},
      {"n_bits", format_int(p.n_bits)},
      {"extractor", p.extractor == Extractor::none ? "none" : "von_neumann"}};
  result.report.tables.push_back(std::move(bit_table));
  result.report.summary = {{"n_input_bits", double(p.n_bits)},
                           {"n_output_bits", double(n)},
                           {"ones", double(ones)},
                           {"bias", bias},
                           {"bias_stderr", bias_stderr},
                           {"runs_z", runs_z},
                           {"lag1_correlation", lag1}};
  result.bits = std::move(bits);
  return result;
}

}  // namespace psplit
