#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

struct DetectorSpec {
  double eta = 1.0;
};

struct ClickRecord {
  std::vector<bool> pattern;  // one flag per measured mode
  std::int64_t trial_index = 0;
};

// Probabilities over the 2^M click patterns; index bit m set means mode m
// clicked. Per-mode POVM: no-click = sum_n (1-eta)^n |n><n|, click is the
// complement, so only the basis weights of the state enter.
inline std::vector<double> click_probabilities(const Eigen::VectorXd& basis_weights,
                                               int num_modes, int cutoff,
                                               const std::vector<DetectorSpec>& specs) {
  if (static_cast<int>(specs.size()) != num_modes)
    throw SpecCountMismatch("need one detector spec per mode");
  for (const auto& spec : specs)
    if (!(spec.eta >= 0.0 && spec.eta <= 1.0))
      throw DomainError("efficiency outside [0,1]");
  const int d = cutoff + 1;
  Eigen::MatrixXd no_click(num_modes, d);
  for (int m = 0; m < num_modes; ++m)
    for (int n = 0; n < d; ++n) no_click(m, n) = std::pow(1.0 - specs[m].eta, n);

  const auto strides = detail::mode_strides(cutoff, num_modes);
  std::vector<double> table(std::size_t{1} << num_modes, 0.0);
  for (Eigen::Index i = 0; i < basis_weights.size(); ++i) {
    if (basis_weights[i] == 0.0) continue;
    for (std::size_t pat = 0; pat < table.size(); ++pat) {
      double w = basis_weights[i];
      for (int m = 0; m < num_modes; ++m) {
        const int n = static_cast<int>(i / strides[m]) % d;
        const double q = no_click(m, n);
        w *= (pat >> m & 1) ? 1.0 - q : q;
      }
      table[pat] += w;
    }
  }
  return table;
}

inline std::vector<double> click_probabilities(const PureState& s,
                                               const std::vector<DetectorSpec>& specs) {
  return click_probabilities(s.amplitudes.cwiseAbs2(), s.num_modes, s.cutoff, specs);
}

inline std::vector<double> click_probabilities(const DensityMatrix& rho,
                                               const std::vector<DetectorSpec>& specs) {
  return click_probabilities(rho.elements.diagonal().real(), rho.num_modes,
                             rho.cutoff, specs);
}

// One categorical draw from a pattern CDF.
inline std::size_t draw_pattern(const std::vector<double>& cdf, RngStream& rng) {
  const double u = rng.uniform();
  std::size_t pat = 0;
  while (pat + 1 < cdf.size() && u >= cdf[pat]) ++pat;
  return pat;
}

inline std::vector<double> pattern_cdf(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) cdf[i] = acc += probs[i];
  return cdf;
}

template <typename State>
std::vector<ClickRecord> sample_clicks(const State& state,
                                       const std::vector<DetectorSpec>& specs,
                                       std::int64_t n_trials, RngStream& rng) {
  const auto cdf = pattern_cdf(click_probabilities(state, specs));
  const int num_modes = state.num_modes;
  std::vector<ClickRecord> records;
  records.reserve(n_trials);
  for (std::int64_t i = 0; i < n_trials; ++i) {
    const std::size_t pat = draw_pattern(cdf, rng);
    ClickRecord rec;
    rec.trial_index = i;
    rec.pattern.resize(num_modes);
    for (int m = 0; m < num_modes; ++m) rec.pattern[m] = (pat >> m) & 1;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace psplit
