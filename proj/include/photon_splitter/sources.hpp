#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/state.hpp"

namespace psplit {

// Phenomenological parametric-down-conversion source: pair amplitude lambda
// (P(n pairs) proportional to lambda^(2n)) heralded by a binary click
// detector of efficiency eta_h on the idler.
struct HeraldedSourceSpec {
  double lambda = 0.1;
  double eta_h = 1.0;
  int cutoff = kDefaultCutoff;
};

// Normalized truncation of sum_n lambda^n |n,n>.
inline PureState two_mode_squeezed(const HeraldedSourceSpec& spec) {
  if (!(spec.lambda >= 0.0 && spec.lambda < 1.0))
    throw DomainError("squeezing parameter must lie in [0,1)");
  if (spec.cutoff < 1) throw DomainError("cutoff must be >= 1");
  PureState s = make_fock_state({0, 0}, spec.cutoff);
  const int d = spec.cutoff + 1;
  for (int n = 0; n <= spec.cutoff; ++n)
    s.amplitudes[Eigen::Index(n) * d + n] = std::pow(spec.lambda, n);
  s.amplitudes /= s.amplitudes.norm();
  return s;
}

// Conditions mode 0 on a click of a binary detector on mode 1 (no-click
// POVM element sum_n (1-eta_h)^n |n><n|). Returns the normalized
// conditional state and the click probability.
inline std::pair<DensityMatrix, double> herald(const PureState& state, double eta_h) {
  if (state.num_modes != 2) throw DomainError("herald needs a two-mode state");
  if (!(eta_h >= 0.0 && eta_h <= 1.0)) throw DomainError("efficiency outside [0,1]");
  const int d = state.dim_per_mode();
  Eigen::VectorXd click_weight(d);
  for (int n = 0; n < d; ++n) click_weight[n] = 1.0 - std::pow(1.0 - eta_h, n);

  DensityMatrix rho;
  rho.num_modes = 1;
  rho.cutoff = state.cutoff;
  rho.elements = Eigen::MatrixXcd::Zero(d, d);
  double p_click = 0.0;
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp) {
      complexd acc = 0.0;
      for (int n = 0; n < d; ++n)
        acc += state.amplitudes[Eigen::Index(m) * d + n] *
               std::conj(state.amplitudes[Eigen::Index(mp) * d + n]) * click_weight[n];
      rho.elements(m, mp) = acc;
      if (m == mp) p_click += acc.real();
    }
  if (p_click < 1e-15) throw NeverClicks("herald click probability below 1e-15");
  rho.elements /= p_click;
  return {std::move(rho), p_click};
}

}  // namespace psplit
