#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "photon_splitter/fock/beam_splitter.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/rng.hpp"

namespace testutil {

using psplit::complexd;

// |1,0> through a 50:50 splitter: (|1,0> + e^{i phi}|0,1>)/sqrt2.
inline psplit::PureState split_photon_state(double phi,
                                            int cutoff = psplit::kDefaultCutoff) {
  const auto bs = psplit::beam_splitter(0.5, phi, cutoff);
  return psplit::apply_two_mode(bs, psplit::make_fock_state({1, 0}, cutoff), 0, 1);
}

inline double max_abs_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Random normalized two-mode state supported on total photon number <= cutoff
// (the sectors a two-mode unitary preserves exactly).
inline psplit::PureState random_conserved_state(int cutoff, psplit::RngStream& rng) {
  psplit::PureState s = psplit::make_fock_state({0, 0}, cutoff);
  const int d = cutoff + 1;
  for (int n0 = 0; n0 < d; ++n0)
    for (int n1 = 0; n1 < d; ++n1) {
      if (n0 + n1 > cutoff) continue;
      s.amplitudes[Eigen::Index(n0) * d + n1] =
          complexd(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
  s.amplitudes /= s.amplitudes.norm();
  return s;
}

// Norm of the total-photon-number-k sector of a two-mode state.
inline double sector_norm(const psplit::PureState& s, int k) {
  const int d = s.dim_per_mode();
  double acc = 0.0;
  for (int n0 = 0; n0 < d; ++n0)
    for (int n1 = 0; n1 < d; ++n1)
      if (n0 + n1 == k) acc += std::norm(s.amplitudes[Eigen::Index(n0) * d + n1]);
  return std::sqrt(acc);
}

inline double mean(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size() - 1);
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace testutil
