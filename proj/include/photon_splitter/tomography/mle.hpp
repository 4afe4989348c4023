#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/tomography/binning.hpp"
#include "photon_splitter/tomography/povm.hpp"

namespace psplit {

struct MleDiagnostics {
  bool converged = false;
  int iterations = 0;
  double final_change = std::numeric_limits<double>::infinity();
  std::vector<double> log_likelihood;  // one entry per accepted iterate
};

// Expectation-maximization fixed point R(rho) = sum_j (f_j / Tr[Pi_j rho]) Pi_j,
// rho <- normalize(R rho R), over all (phase, bin) cells with nonzero counts.
// A full step that would lower the log-likelihood is replaced by the diluted
// step ((1-eps)I + eps R) rho ((1-eps)I + eps R) with eps halved until the
// likelihood is nondecreasing, which keeps the trajectory monotone and the
// iterate positive. Non-convergence is reported in the diagnostics, not
// thrown; the best iterate is returned.
inline std::pair<DensityMatrix, MleDiagnostics> mle_reconstruct(
    const BinnedData& data, int cutoff, int max_iters = 2000, double tol = 1e-7) {
  if (data.phases.size() < 3)
    throw TooFewPhases("tomography needs samples from at least 3 phases");
  if (cutoff < 1) throw DomainError("cutoff must be >= 1");
  const int d = cutoff + 1;

  std::vector<Eigen::MatrixXcd> povms;
  std::vector<double> freqs;
  double n_total = 0.0;
  for (std::size_t ph = 0; ph < data.phases.size(); ++ph)
    for (int b = 0; b < data.n_bins(); ++b) {
      const double f = data.counts[ph][b];
      if (f <= 0.0) continue;
      povms.push_back(bin_povm(data.phases[ph], data.edges[b], data.edges[b + 1], cutoff));
      freqs.push_back(f);
      n_total += f;
    }
  if (povms.empty()) throw DomainError("no counts to reconstruct from");

  auto log_likelihood = [&](const Eigen::MatrixXcd& rho) {
    double ll = 0.0;
    for (std::size_t j = 0; j < povms.size(); ++j) {
      const double p = std::max((povms[j] * rho).trace().real(), 1e-300);
      ll += freqs[j] * std::log(p);
    }
    return ll;
  };
  auto hermitize = [](Eigen::MatrixXcd m) {
    m = 0.5 * (m + m.adjoint().eval());
    return m;
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(d, d) / double(d);
  MleDiagnostics diag;
  double ll = log_likelihood(rho);
  diag.log_likelihood.push_back(ll);

  for (int it = 0; it < max_iters; ++it) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t j = 0; j < povms.size(); ++j) {
      const double p = std::max((povms[j] * rho).trace().real(), 1e-300);
      r += (freqs[j] / p) * povms[j];
    }
    r /= n_total;  // fixed point has R = I

    Eigen::MatrixXcd candidate = hermitize(r * rho * r);
    candidate /= candidate.trace().real();
    double ll_new = log_likelihood(candidate);

    double eps = 0.5;
    while (ll_new < ll - 1e-12 && eps > 1e-6) {
      const Eigen::MatrixXcd s =
          (1.0 - eps) * Eigen::MatrixXcd::Identity(d, d) + eps * r;
      candidate = hermitize(s * rho * s);
      candidate /= candidate.trace().real();
      ll_new = log_likelihood(candidate);
      eps *= 0.5;
    }
    if (ll_new < ll - 1e-12) break;  // numerically stationary

    diag.final_change = (candidate - rho).cwiseAbs().maxCoeff();
    rho = std::move(candidate);
    ll = ll_new;
    diag.log_likelihood.push_back(ll);
    diag.iterations = it + 1;
    if (diag.final_change < tol) {
      diag.converged = true;
      break;
    }
  }

  DensityMatrix out;
  out.num_modes = 1;
  out.cutoff = cutoff;
  out.elements = std::move(rho);
  return {std::move(out), std::move(diag)};
}

}  // namespace psplit
