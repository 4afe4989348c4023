#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "photon_splitter/experiments/params.hpp"
#include "photon_splitter/experiments/report.hpp"
#include "photon_splitter/fock/beam_splitter.hpp"
#include "photon_splitter/fock/quadrature.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/parallel.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

struct DualHomodyneParams {
  std::vector<double> relative_phases = uniform_phases(12, 2.0 * M_PI);
  double phi_bs = M_PI / 2;
  std::int64_t n_pairs_per_point = 100000;
  InputKind input = InputKind::photon;  // photon or vacuum control
  int cutoff = kDefaultCutoff;
  unsigned n_threads = 1;
};

// Homodyne detectors on both splitter outputs; sweeping the relative LO
// phase swings the quadrature correlation through correlated, anticorrelated
// and uncorrelated settings. The sweep is summarized by the least-squares
// amplitude and phase of r(dtheta) = A cos(dtheta + phase).
inline ExperimentReport run_dual_homodyne(const DualHomodyneParams& p,
                                          std::uint64_t seed) {
  if (p.relative_phases.empty()) throw DomainError("phase list must not be empty");
  if (p.n_pairs_per_point < 2) throw DomainError("n_pairs_per_point must be >= 2");
  if (p.input == InputKind::two_photon)
    throw DomainError("input must be photon or vacuum");

  const std::vector<int> photons = p.input == InputKind::vacuum
                                       ? std::vector<int>{0, 0}
                                       : std::vector<int>{1, 0};
  const auto state = apply_two_mode(beam_splitter(0.5, p.phi_bs, p.cutoff),
                                    make_fock_state(photons, p.cutoff), 0, 1);

  // Exact correlation oracle from the operator second moments.
  const auto rho1 = partial_trace(state, {0});
  const auto rho2 = partial_trace(state, {1});

  const std::size_t n = static_cast<std::size_t>(p.n_pairs_per_point);
  std::vector<double> x1(n), x2(n);

  Table correlations;
  correlations.name = "correlations";
  correlations.columns = {{"relative_phase", {}},
                          {"pearson", {}},
                          {"pearson_stderr", {}},
                          {"oracle", {}}};

  double max_abs_r = 0.0;
  std::vector<double> rs(p.relative_phases.size());
  for (std::size_t j = 0; j < p.relative_phases.size(); ++j) {
    const double dtheta = p.relative_phases[j];
    const JointHomodyneSampler sampler(state, dtheta, 0.0);
    const std::uint64_t point_seed = subseed(seed, j);
    parallel_for(n, p.n_threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        RngStream rng = RngStream::derive(point_seed, i);
        const auto [a, b] = sampler.sample_pair(rng);
        x1[i] = a;
        x2[i] = b;
      }
    });

    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) m1 += x1[i], m2 += x2[i];
    m1 /= double(n);
    m2 /= double(n);
    double s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s11 += (x1[i] - m1) * (x1[i] - m1);
      s22 += (x2[i] - m2) * (x2[i] - m2);
      s12 += (x1[i] - m1) * (x2[i] - m2);
    }
    const double r = s12 / std::sqrt(s11 * s22);
    const double se = (1.0 - r * r) / std::sqrt(double(n) - 1.0);

    const double oracle =
        expectation_xx(state, dtheta, 0.0) /
        std::sqrt(quadrature_second_moment(rho1, dtheta) *
                  quadrature_second_moment(rho2, 0.0));

    rs[j] = r;
    max_abs_r = std::max(max_abs_r, std::abs(r));
    correlations.columns[0].values.push_back(dtheta);
    correlations.columns[1].values.push_back(r);
    correlations.columns[2].values.push_back(se);
    correlations.columns[3].values.push_back(oracle);
  }

  // Least squares r = a cos(dtheta) + b sin(dtheta) = A cos(dtheta + phase).
  double cc = 0.0, cs = 0.0, ss = 0.0, rc = 0.0, rsin = 0.0;
  for (std::size_t j = 0; j < rs.size(); ++j) {
    const double c = std::cos(p.relative_phases[j]);
    const double s = std::sin(p.relative_phases[j]);
    cc += c * c;
    cs += c * s;
    ss += s * s;
    rc += rs[j] * c;
    rsin += rs[j] * s;
  }
  const double det = cc * ss - cs * cs;
  double a = 0.0, b = 0.0;
  if (std::abs(det) > 1e-12) {
    a = (ss * rc - cs * rsin) / det;
    b = (cc * rsin - cs * rc) / det;
  }
  const double amplitude = std::hypot(a, b);
  const double phase = std::atan2(-b, a);

  double resid2 = 0.0;
  for (std::size_t j = 0; j < rs.size(); ++j)
    resid2 += std::pow(rs[j] - a * std::cos(p.relative_phases[j]) -
                           b * std::sin(p.relative_phases[j]),
                       2);
  const double dof = std::max<double>(1.0, double(rs.size()) - 2.0);
  const double s2 = resid2 / dof;
  double amplitude_stderr = 0.0;
  if (std::abs(det) > 1e-12) {
    const double var_a = s2 * ss / det;
    const double var_b = s2 * cc / det;
    const double cov_ab = -s2 * cs / det;
    amplitude_stderr =
        amplitude > 0.0
            ? std::sqrt(std::max(0.0, a * a * var_a + b * b * var_b +
                                          2.0 * a * b * cov_ab)) /
                  amplitude
            : std::sqrt(0.5 * (var_a + var_b));
  }

  std::string phase_list;
  for (std::size_t j = 0; j < p.relative_phases.size(); ++j) {
    if (j) phase_list += ",";
    phase_list += format_double(p.relative_phases[j]);
  }

  ExperimentReport report;
  report.name = "dual_homodyne";
  report.seed = seed;
  report.config_echo = {{"experiment", "dual_homodyne"},
                        {"relative_phases", phase_list},
                        {"phi_bs", format_double(p.phi_bs)},
                        {"n_pairs_per_point", format_int(p.n_pairs_per_point)},
                        {"input", input_label(p.input)},
                        {"cutoff", format_int(p.cutoff)}};
  report.tables.push_back(std::move(correlations));
  report.summary = {{"amplitude", amplitude},
                    {"amplitude_stderr", amplitude_stderr},
                    {"phase", phase},
                    {"max_abs_correlation", max_abs_r}};
  return report;
}

}  // namespace psplit
