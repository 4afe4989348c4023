#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "photon_splitter/errors.hpp"

namespace psplit {

enum class InputKind { photon, two_photon, vacuum };

inline const char* input_label(InputKind k) {
  switch (k) {
    case InputKind::photon: return "photon";
    case InputKind::two_photon: return "two_photon";
    case InputKind::vacuum: return "vacuum";
  }
  throw DomainError("unhandled input kind");
}

// k phases evenly spaced over [0, span), starting at 0.
inline std::vector<double> uniform_phases(int k, double span) {
  if (k < 1) throw DomainError("need at least one phase");
  std::vector<double> phases(k);
  for (int i = 0; i < k; ++i) phases[i] = span * i / k;
  return phases;
}

}  // namespace psplit
