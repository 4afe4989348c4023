// Desk-scale tour of one photon on a 50:50 beam splitter: exact click
// statistics, a sampled anticoincidence run, the two-photon contrast, and an
// interferometer fringe drawn as text.

#include <cmath>
#include <cstdio>

#include "photon_splitter/photon_splitter.hpp"

using namespace psplit;

int main() {
  const int cutoff = kDefaultCutoff;
  const auto splitter = beam_splitter(0.5, M_PI / 2, cutoff);
  const std::vector<DetectorSpec> ideal = {{1.0}, {1.0}};

  const auto split_photon =
      apply_two_mode(splitter, make_fock_state({1, 0}, cutoff), 0, 1);
  auto p = click_probabilities(split_photon, ideal);
  std::printf("one photon in, ideal detectors on both output ports\n");
  std::printf("  P(c only) = %.4f   P(d only) = %.4f   P(both) = %.4f   "
              "P(none) = %.4f\n\n",
              p[1], p[2], p[3], p[0]);

  AnticoincidenceParams ac;
  ac.n_trials = 200000;
  const auto r = run_anticoincidence(ac, 7);
  std::printf("sampled %lld trials: c-only %.0f, d-only %.0f, "
              "coincidences %.0f, alpha = %.4f\n\n",
              static_cast<long long>(ac.n_trials),
              r.summary.at("counts_c_only"), r.summary.at("counts_d_only"),
              r.summary.at("counts_both"), r.summary.at("alpha"));

  const auto two_photons =
      apply_two_mode(splitter, make_fock_state({1, 1}, cutoff), 0, 1);
  p = click_probabilities(two_photons, ideal);
  std::printf("one photon per input port: P(both click) = %.4f "
              "(independent particles would give 0.5)\n\n",
              p[3]);

  MachZehnderParams mz;
  mz.phases = uniform_phases(24, 2.0 * M_PI);
  mz.n_trials_per_phase = 4000;
  const auto fringe = run_mach_zehnder(mz, 11);
  const auto& phases = fringe.table("fringes").column("phase").values;
  const auto& p_sym = fringe.table("fringes").column("p_symmetric").values;
  std::printf("interferometer fringe, symmetric port (%lld trials/phase)\n",
              static_cast<long long>(mz.n_trials_per_phase));
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const int bar = static_cast<int>(std::lround(50.0 * p_sym[i]));
    std::printf("  phase %5.2f  %-50.*s %.3f\n", phases[i], bar,
                "##################################################",
                p_sym[i]);
  }
  std::printf("visibility = %.4f\n", fringe.summary.at("visibility"));
  return 0;
}
