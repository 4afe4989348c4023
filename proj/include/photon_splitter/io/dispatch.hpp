#pragma once

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/experiments/experiments.hpp"
#include "photon_splitter/io/config.hpp"
#include "photon_splitter/io/csv.hpp"
#include "photon_splitter/io/report_io.hpp"
#include "photon_splitter/sources.hpp"
#include "photon_splitter/tomography/binning.hpp"
#include "photon_splitter/tomography/mle.hpp"
#include "photon_splitter/tomography/wigner.hpp"

namespace psplit {

namespace detail {

inline InputKind pick_input(const std::string& label, bool allow_two_photon) {
  if (label == "photon") return InputKind::photon;
  if (label == "vacuum") return InputKind::vacuum;
  if (label == "two_photon" && allow_two_photon) return InputKind::two_photon;
  throw ValidationError("input",
                        "'" + label + "' is not supported by this experiment");
}

}  // namespace detail

// Full tomography chain: prepare, sample, bin, reconstruct, map out the
// Wigner function. Artifacts land next to report.json: samples.csv, rho.json
// (reconstructed matrix), wigner.csv.
inline ExperimentReport run_tomography_pipeline(
    const RunConfig& cfg, unsigned n_threads,
    const std::filesystem::path& out_dir) {
  DensityMatrix rho;
  double herald_p = -1.0;
  if (cfg.input == "photon") {
    rho = to_density(make_fock_state({1}, cfg.cutoff));
  } else if (cfg.input == "vacuum") {
    rho = to_density(make_fock_state({0}, cfg.cutoff));
  } else if (cfg.input == "heralded") {
    const auto pair_state =
        two_mode_squeezed({cfg.lambda, cfg.eta_h, cfg.cutoff});
    auto [state, p_click] = herald(pair_state, cfg.eta_h);
    rho = std::move(state);
    herald_p = p_click;
  } else {
    throw ValidationError("input", "must be photon, vacuum or heralded");
  }

  const auto phases = uniform_phases(cfg.n_phases, M_PI);
  const auto samples =
      generate_tomography_dataset(rho, phases, cfg.n_per_phase, cfg.seed,
                                  n_threads);
  write_samples_csv(out_dir / "samples.csv", samples);

  const auto binned = bin_samples(samples, cfg.n_bins);
  const auto [rho_hat, diag] =
      mle_reconstruct(binned, cfg.cutoff, cfg.mle_max_iters, cfg.mle_tol);
  write_density_json(out_dir / "rho.json", rho_hat);

  const QuadratureGrid axis(-cfg.wigner_range, cfg.wigner_range,
                            cfg.wigner_points);
  write_wigner_csv(out_dir / "wigner.csv", wigner_from_density(rho_hat, axis, axis));
  const QuadratureGrid origin_axis(-1.0, 1.0, 3);
  const double w00 =
      wigner_from_density(rho_hat, origin_axis, origin_axis).w(1, 1);

  ExperimentReport report;
  report.name = "tomography";
  report.seed = cfg.seed;
  Table phase_table;
  phase_table.name = "phase_totals";
  phase_table.columns = {{"theta", {}}, {"n_samples", {}}};
  for (std::size_t j = 0; j < binned.phases.size(); ++j) {
    phase_table.columns[0].values.push_back(binned.phases[j]);
    phase_table.columns[1].values.push_back(double(binned.totals[j]));
  }
  report.tables.push_back(std::move(phase_table));
  report.summary = {
      {"rho00", rho_hat.elements(0, 0).real()},
      {"rho11", rho_hat.elements(1, 1).real()},
      {"abs_rho01", std::abs(rho_hat.elements(0, 1))},
      {"w00", w00},
      {"mle_iterations", double(diag.iterations)},
      {"mle_converged", diag.converged ? 1.0 : 0.0},
      {"mle_final_change", diag.final_change},
      {"log_likelihood", diag.log_likelihood.back()},
      {"n_samples_total", double(samples.size())},
  };
  if (herald_p >= 0.0) report.summary["herald_p_click"] = herald_p;
  return report;
}

// Runs the configured experiment and writes its artifacts under cfg.out.
// Returns the process exit code; any failure leaves a machine-readable
// error.json in the output directory.
inline int dispatch(const RunConfig& cfg, unsigned n_threads = 1) {
  const std::filesystem::path out_dir = cfg.out;
  try {
    std::filesystem::create_directories(out_dir);

    ExperimentReport report;
    if (cfg.experiment == "anticoincidence") {
      AnticoincidenceParams p;
      p.eta_c = cfg.eta_c;
      p.eta_d = cfg.eta_d;
      p.n_trials = cfg.n_trials;
      p.input = detail::pick_input(cfg.input, true);
      p.cutoff = cfg.cutoff;
      p.n_threads = n_threads;
      report = run_anticoincidence(p, cfg.seed);
    } else if (cfg.experiment == "mach_zehnder") {
      MachZehnderParams p;
      p.phases = cfg.phases;
      p.n_trials_per_phase = cfg.n_trials_per_phase;
      p.eta = cfg.eta;
      p.cutoff = cfg.cutoff;
      p.n_threads = n_threads;
      report = run_mach_zehnder(p, cfg.seed);
    } else if (cfg.experiment == "dual_homodyne") {
      DualHomodyneParams p;
      p.relative_phases = cfg.relative_phases;
      p.phi_bs = cfg.phi_bs;
      p.n_pairs_per_point = cfg.n_pairs_per_point;
      p.input = detail::pick_input(cfg.input, false);
      p.cutoff = cfg.cutoff;
      p.n_threads = n_threads;
      report = run_dual_homodyne(p, cfg.seed);
    } else if (cfg.experiment == "snr_wavepacket") {
      SnrParams p;
      p.n_samples = cfg.n_samples;
      p.collection_efficiency = cfg.collection_efficiency;
      p.input = detail::pick_input(cfg.input, false);
      p.cutoff = cfg.cutoff;
      p.n_threads = n_threads;
      report = run_snr_wavepacket(p, cfg.seed);
    } else if (cfg.experiment == "qrng") {
      QrngParams p;
      p.n_bits = cfg.n_bits;
      p.extractor = cfg.extractor == "von_neumann" ? Extractor::von_neumann
                                                   : Extractor::none;
      p.n_threads = n_threads;
      report = run_qrng(p, cfg.seed).report;
    } else if (cfg.experiment == "tomography") {
      report = run_tomography_pipeline(cfg, n_threads, out_dir);
    } else {
      throw UnknownExperiment(cfg.experiment);
    }

    report.config_echo = config_map(cfg);
    write_report(report, out_dir);
    return 0;
  } catch (const std::exception& e) {
    const std::string code = error_code_of(e);
    try {
      std::filesystem::create_directories(out_dir);
      write_error_json(out_dir, code, e.what());
    } catch (...) {
      // out_dir itself is unwritable; stderr below is all that is left.
    }
    std::cerr << "error (" << code << "): " << e.what() << "\n";
    return 1;
  }
}

}  // namespace psplit
