#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/state.hpp"

namespace psplit {

// Two-mode number-conserving unitary stored as one exact matrix per total
// photon number k. Block k acts on span{|k-j, j>, j = 0..k} (j = photons in
// the second mode of the pair); blocks are kept up to k = 2*cutoff so any
// two-mode sector of a truncated state can be transformed.
struct TwoModeUnitary {
  int cutoff = 0;
  double t = 1.0;    // transmittance
  double phi = 0.0;  // reflection phase
  std::vector<Eigen::MatrixXcd> blocks;
};

// exp(theta * (e^{i phi} b'a - e^{-i phi} a'b)) with theta = arccos(sqrt(t)).
// On |1,0> this gives sqrt(t)|1,0> + e^{i phi} sqrt(1-t)|0,1>; at t = 1/2,
// phi = pi/2 the single-photon block is (1/sqrt2)[[1, i], [i, 1]].
inline TwoModeUnitary beam_splitter(double t, double phi, int cutoff = kDefaultCutoff) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmittance outside [0,1]");
  if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  const double theta = std::acos(std::min(1.0, std::sqrt(t)));
  TwoModeUnitary u;
  u.cutoff = cutoff;
  u.t = t;
  u.phi = phi;
  u.blocks.reserve(2 * cutoff + 1);
  for (int k = 0; k <= 2 * cutoff; ++k) {
    // H = i*A is Hermitian; exp(A) = V exp(-i lambda) V'.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k + 1, k + 1);
    for (int j = 0; j < k; ++j) {
      const double c = theta * std::sqrt(double(j + 1) * double(k - j));
      h(j + 1, j) = complexd(0.0, 1.0) * std::polar(c, phi);
      h(j, j + 1) = std::conj(h(j + 1, j));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    const Eigen::VectorXcd phase =
        (complexd(0.0, -1.0) * eig.eigenvalues().array()).exp();
    u.blocks.push_back(eig.eigenvectors() * phase.asDiagonal() *
                       eig.eigenvectors().adjoint());
  }
  return u;
}

// U on modes (a, b) of s, identity elsewhere. Total photon number per block
// is conserved exactly; in sectors with k > cutoff the truncated basis
// cannot hold every |k-j, j>, and amplitude the block would place outside
// it is a truncation leak. Leak above 1e-10 raises, below it the state is
// renormalized.
inline PureState apply_two_mode(const TwoModeUnitary& u, const PureState& s,
                                int mode_a, int mode_b) {
  if (mode_a == mode_b) throw ModeIndexError("modes must differ");
  if (mode_a < 0 || mode_a >= s.num_modes || mode_b < 0 || mode_b >= s.num_modes)
    throw ModeIndexError("mode out of range");
  if (u.cutoff != s.cutoff) throw DimensionMismatch("unitary cutoff differs from state");

  const int d = s.cutoff + 1;
  const auto strides = detail::mode_strides(s.cutoff, s.num_modes);
  const Eigen::Index sa = strides[mode_a];
  const Eigen::Index sb = strides[mode_b];

  PureState out = s;
  double leak = 0.0;
  for (Eigen::Index base = 0; base < s.amplitudes.size(); ++base) {
    if (static_cast<int>(base / sa) % d != 0) continue;
    if (static_cast<int>(base / sb) % d != 0) continue;
    for (int k = 0; k <= 2 * s.cutoff; ++k) {
      const int j_lo = std::max(0, k - s.cutoff);
      const int j_hi = std::min(k, s.cutoff);
      Eigen::VectorXcd in = Eigen::VectorXcd::Zero(k + 1);
      for (int j = j_lo; j <= j_hi; ++j)
        in[j] = s.amplitudes[base + Eigen::Index(k - j) * sa + Eigen::Index(j) * sb];
      if (in.isZero(0.0)) continue;
      const Eigen::VectorXcd res = u.blocks[k] * in;
      for (int j = 0; j <= k; ++j) {
        if (j < j_lo || j > j_hi) {
          leak += std::norm(res[j]);
          continue;
        }
        out.amplitudes[base + Eigen::Index(k - j) * sa + Eigen::Index(j) * sb] = res[j];
      }
    }
  }
  if (leak > 1e-10) throw CutoffExceeded("two-mode unitary leaks past the cutoff");
  if (leak > 0.0) out.amplitudes /= out.amplitudes.norm();
  return out;
}

}  // namespace psplit
