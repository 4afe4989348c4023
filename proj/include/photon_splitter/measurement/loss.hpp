#pragma once

#include <Eigen/Dense>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/beam_splitter.hpp"
#include "photon_splitter/fock/state.hpp"

namespace psplit {

// Standard loss channel: mix the mode with vacuum on a beam splitter of
// transmittance eta and trace the vacuum port out. |1><1| maps to
// eta|1><1| + (1-eta)|0><0|.
inline DensityMatrix attenuate(const DensityMatrix& rho, double eta) {
  if (rho.num_modes != 1) throw DomainError("loss model is per mode");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("efficiency outside [0,1]");
  if (eta == 1.0) return rho;
  const int d = rho.dim_per_mode();
  const TwoModeUnitary u = beam_splitter(eta, 0.0, rho.cutoff);

  // Columns U|n,0> reshaped to (signal, vacuum-port) index pairs; the pair
  // never holds more than cutoff photons total, so nothing leaks.
  using RowMat = Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  std::vector<RowMat> split(d);
  for (int n = 0; n < d; ++n) {
    const PureState col = apply_two_mode(u, make_fock_state({n, 0}, rho.cutoff), 0, 1);
    split[n] = Eigen::Map<const RowMat>(col.amplitudes.data(), d, d);
  }
  DensityMatrix out;
  out.num_modes = 1;
  out.cutoff = rho.cutoff;
  out.elements = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n)
    for (int np = 0; np < d; ++np) {
      if (rho.elements(n, np) == complexd(0.0)) continue;
      out.elements += rho.elements(n, np) * (split[n] * split[np].adjoint());
    }
  return out;
}

}  // namespace psplit
