#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/measurement/homodyne.hpp"

namespace psplit {

// Phase-tagged quadrature histograms over one common uniform bin range.
struct BinnedData {
  Eigen::VectorXd edges;               // n_bins + 1 ascending edges
  std::vector<double> phases;          // distinct LO phases, ascending
  std::vector<Eigen::VectorXd> counts; // one vector of n_bins counts per phase
  std::vector<std::int64_t> totals;

  int n_bins() const { return static_cast<int>(edges.size()) - 1; }
};

// Bins cover [min(-8, samples), max(8, samples)]: every sample is counted
// and the range always contains the default density support, so the binned
// POVM stays complete to the truncation tail.
inline BinnedData bin_samples(const std::vector<QuadratureSample>& samples,
                              int n_bins) {
  if (n_bins < 20) throw DomainError("need at least 20 bins");
  std::map<double, std::int64_t> phase_index;
  for (const auto& s : samples) phase_index.emplace(s.theta, 0);
  if (phase_index.size() < 3)
    throw TooFewPhases("tomography needs samples from at least 3 phases");

  BinnedData data;
  std::int64_t next = 0;
  for (auto& [theta, idx] : phase_index) {
    idx = next++;
    data.phases.push_back(theta);
  }
  double lo = -8.0, hi = 8.0;
  for (const auto& s : samples) {
    lo = std::min(lo, s.x);
    hi = std::max(hi, s.x);
  }
  data.edges = Eigen::VectorXd::LinSpaced(n_bins + 1, lo, hi);
  data.counts.assign(data.phases.size(), Eigen::VectorXd::Zero(n_bins));
  data.totals.assign(data.phases.size(), 0);
  const double width = (hi - lo) / n_bins;
  for (const auto& s : samples) {
    const auto idx = phase_index.at(s.theta);
    int bin = static_cast<int>((s.x - lo) / width);
    bin = std::clamp(bin, 0, n_bins - 1);
    data.counts[idx][bin] += 1.0;
    data.totals[idx] += 1;
  }
  return data;
}

}  // namespace psplit
