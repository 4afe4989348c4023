#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "photon_splitter/errors.hpp"

namespace psplit {

using complexd = std::complex<double>;

inline constexpr int kDefaultCutoff = 6;

// Pure state on num_modes truncated oscillators. amplitudes is indexed by
// the photon-number tuple (n_0, ..., n_{M-1}) in row-major order: mode 0
// carries the largest stride. Basis index of mode m runs 0..cutoff.
struct PureState {
  int num_modes = 0;
  int cutoff = 0;
  Eigen::VectorXcd amplitudes;

  int dim_per_mode() const { return cutoff + 1; }
};

struct DensityMatrix {
  int num_modes = 0;
  int cutoff = 0;
  Eigen::MatrixXcd elements;

  int dim_per_mode() const { return cutoff + 1; }
};

namespace detail {

inline Eigen::Index total_dim(int cutoff, int num_modes) {
  Eigen::Index d = 1;
  for (int m = 0; m < num_modes; ++m) d *= cutoff + 1;
  return d;
}

// Strides of the row-major tuple encoding.
inline std::vector<Eigen::Index> mode_strides(int cutoff, int num_modes) {
  std::vector<Eigen::Index> s(num_modes, 1);
  for (int m = num_modes - 2; m >= 0; --m) s[m] = s[m + 1] * (cutoff + 1);
  return s;
}

}  // namespace detail

inline PureState make_fock_state(const std::vector<int>& ns, int cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  if (ns.empty()) throw DomainError("need at least one mode");
  for (int n : ns) {
    if (n < 0) throw DomainError("photon number must be >= 0");
    if (n > cutoff) throw CutoffExceeded("photon number exceeds cutoff");
  }
  PureState s;
  s.num_modes = static_cast<int>(ns.size());
  s.cutoff = cutoff;
  s.amplitudes = Eigen::VectorXcd::Zero(detail::total_dim(cutoff, s.num_modes));
  const auto strides = detail::mode_strides(cutoff, s.num_modes);
  Eigen::Index idx = 0;
  for (int m = 0; m < s.num_modes; ++m) idx += strides[m] * ns[m];
  s.amplitudes[idx] = 1.0;
  return s;
}

inline PureState phase_shift(const PureState& s, int mode, double theta) {
  if (mode < 0 || mode >= s.num_modes) throw ModeIndexError("mode out of range");
  const auto strides = detail::mode_strides(s.cutoff, s.num_modes);
  PureState out = s;
  for (Eigen::Index i = 0; i < out.amplitudes.size(); ++i) {
    const int n = static_cast<int>(i / strides[mode]) % (s.cutoff + 1);
    out.amplitudes[i] *= std::polar(1.0, n * theta);
  }
  return out;
}

inline DensityMatrix to_density(const PureState& s) {
  DensityMatrix rho;
  rho.num_modes = s.num_modes;
  rho.cutoff = s.cutoff;
  rho.elements = s.amplitudes * s.amplitudes.adjoint();
  return rho;
}

namespace detail {

struct TraceIndexing {
  std::vector<Eigen::Index> kept_offsets;    // reduced index -> full offset
  std::vector<Eigen::Index> traced_offsets;  // traced combo -> full offset
};

inline TraceIndexing trace_indexing(int cutoff, int num_modes,
                                    std::vector<int> keep) {
  if (keep.empty()) throw ModeIndexError("keep set is empty");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw ModeIndexError("duplicate mode in keep set");
  for (int m : keep)
    if (m < 0 || m >= num_modes) throw ModeIndexError("mode out of range");

  std::vector<int> traced;
  for (int m = 0; m < num_modes; ++m)
    if (!std::binary_search(keep.begin(), keep.end(), m)) traced.push_back(m);

  const auto strides = mode_strides(cutoff, num_modes);
  const int d = cutoff + 1;
  auto offsets = [&](const std::vector<int>& modes) {
    Eigen::Index count = 1;
    for (std::size_t k = 0; k < modes.size(); ++k) count *= d;
    std::vector<Eigen::Index> out(count, 0);
    for (Eigen::Index i = 0; i < count; ++i) {
      Eigen::Index rest = i;
      // row-major within the selected modes as well
      for (int k = static_cast<int>(modes.size()) - 1; k >= 0; --k) {
        out[i] += strides[modes[k]] * (rest % d);
        rest /= d;
      }
    }
    return out;
  };
  return TraceIndexing{offsets(keep), offsets(traced)};
}

}  // namespace detail

// Reduced density matrix over the kept modes (original relative order).
inline DensityMatrix partial_trace(const PureState& s, const std::vector<int>& keep) {
  const auto ix = detail::trace_indexing(s.cutoff, s.num_modes, keep);
  const Eigen::Index dk = static_cast<Eigen::Index>(ix.kept_offsets.size());
  DensityMatrix rho;
  rho.num_modes = static_cast<int>(keep.size());
  rho.cutoff = s.cutoff;
  rho.elements = Eigen::MatrixXcd::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      complexd acc = 0.0;
      for (const Eigen::Index e : ix.traced_offsets)
        acc += s.amplitudes[ix.kept_offsets[a] + e] *
               std::conj(s.amplitudes[ix.kept_offsets[b] + e]);
      rho.elements(a, b) = acc;
    }
  return rho;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho_in,
                                   const std::vector<int>& keep) {
  const auto ix = detail::trace_indexing(rho_in.cutoff, rho_in.num_modes, keep);
  const Eigen::Index dk = static_cast<Eigen::Index>(ix.kept_offsets.size());
  DensityMatrix rho;
  rho.num_modes = static_cast<int>(keep.size());
  rho.cutoff = rho_in.cutoff;
  rho.elements = Eigen::MatrixXcd::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      complexd acc = 0.0;
      for (const Eigen::Index e : ix.traced_offsets)
        acc += rho_in.elements(ix.kept_offsets[a] + e, ix.kept_offsets[b] + e);
      rho.elements(a, b) = acc;
    }
  return rho;
}

inline double fidelity(const DensityMatrix& rho, const PureState& target) {
  if (rho.elements.rows() != target.amplitudes.size() ||
      rho.num_modes != target.num_modes || rho.cutoff != target.cutoff)
    throw DimensionMismatch("state dimensions differ");
  const complexd v = target.amplitudes.adjoint() * rho.elements * target.amplitudes;
  return v.real();
}

}  // namespace psplit
