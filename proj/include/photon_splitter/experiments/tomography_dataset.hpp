#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/parallel.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

// Phase-tagged homodyne records for reconstruction. Quadrature phases theta
// and theta + pi measure mirrored distributions, so [0, pi) already covers
// every independent projection.
inline std::vector<QuadratureSample> generate_tomography_dataset(
    const DensityMatrix& rho, const std::vector<double>& phases,
    std::int64_t n_per_phase, std::uint64_t seed, unsigned n_threads = 1) {
  if (rho.num_modes != 1) throw DomainError("needs a single-mode state");
  if (n_per_phase < 1) throw DomainError("n_per_phase must be >= 1");
  std::set<double> distinct;
  for (const double theta : phases) {
    if (!(theta >= 0.0 && theta < M_PI))
      throw DomainError("phases must lie in [0, pi)");
    distinct.insert(theta);
  }
  if (distinct.size() < 3) throw TooFewPhases("need at least 3 distinct phases");

  const auto n = static_cast<std::size_t>(n_per_phase);
  std::vector<QuadratureSample> samples(phases.size() * n);
  for (std::size_t j = 0; j < phases.size(); ++j) {
    const double theta = phases[j];
    const auto table = cached_cdf_table(rho, theta, default_grid());
    const std::uint64_t phase_seed = subseed(seed, j);
    QuadratureSample* slot = samples.data() + j * n;
    parallel_for(n, n_threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        slot[i] = {table->sample(RngStream::derive(phase_seed, i).uniform()),
                   theta, 0, static_cast<std::int64_t>(i)};
    });
  }
  return samples;
}

}  // namespace psplit
