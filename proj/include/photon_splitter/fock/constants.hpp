#pragma once

#include "photon_splitter/errors.hpp"

namespace psplit {

// CODATA 2018
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kEpsilon0 = 8.8541878128e-12;  // F / m

// Vacuum electric-field variance hbar*nu / (epsilon0 * V) of a mode of
// frequency nu confined to volume V, in (V/m)^2.
inline double zero_point_field_variance(double nu, double volume) {
  if (!(nu > 0.0)) throw DomainError("frequency must be positive");
  if (!(volume > 0.0)) throw DomainError("mode volume must be positive");
  return kHbar * nu / (kEpsilon0 * volume);
}

}  // namespace psplit
