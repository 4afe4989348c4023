#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/tomography/binning.hpp"
#include "photon_splitter/tomography/mle.hpp"
#include "photon_splitter/tomography/povm.hpp"
#include "photon_splitter/tomography/wigner.hpp"
#include "test_util.hpp"

using namespace psplit;
using Catch::Approx;

namespace {

std::vector<QuadratureSample> phase_tagged_samples(const DensityMatrix& rho,
                                                   int n_phases,
                                                   std::int64_t per_phase,
                                                   std::uint64_t seed) {
  std::vector<QuadratureSample> all;
  for (int k = 0; k < n_phases; ++k) {
    const double theta = k * M_PI / n_phases;
    RngStream rng = RngStream::derive(seed, k);
    auto batch = sample_homodyne(rho, theta, per_phase, rng);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

}  // namespace

TEST_CASE("binning keeps every sample and needs 3 phases and 20 bins") {
  const DensityMatrix vac = to_density(make_fock_state({0}, 3));
  const auto samples = phase_tagged_samples(vac, 4, 2500, 11);
  const BinnedData data = bin_samples(samples, 50);
  REQUIRE(data.phases.size() == 4);
  for (int ph = 0; ph < 4; ++ph) {
    CHECK(data.totals[ph] == 2500);
    CHECK(data.counts[ph].sum() == Approx(2500.0));
    CHECK(data.counts[ph].minCoeff() >= 0.0);
  }
  CHECK_THROWS_AS(bin_samples(samples, 10), DomainError);
  CHECK_THROWS_AS(bin_samples(phase_tagged_samples(vac, 2, 100, 3), 50), TooFewPhases);
}

TEST_CASE("symmetric states produce symmetric histograms") {
  const DensityMatrix one = to_density(make_fock_state({1}, 3));
  const auto samples = phase_tagged_samples(one, 3, 20000, 5);
  const BinnedData data = bin_samples(samples, 40);
  // left and right halves hold equal mass up to a 5 sigma binomial band
  for (std::size_t ph = 0; ph < data.phases.size(); ++ph) {
    const double n = static_cast<double>(data.totals[ph]);
    const double left = data.counts[ph].head(20).sum();
    CHECK(std::abs(left - 0.5 * n) < 5.0 * std::sqrt(0.25 * n));
  }
}

TEST_CASE("bin projectors tile the line into a resolution of identity") {
  const int cutoff = 6;
  for (double theta : {0.0, 0.7, 2.9}) {
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    const Eigen::VectorXd edges = Eigen::VectorXd::LinSpaced(51, -8.0, 8.0);
    for (int b = 0; b < 50; ++b) total += bin_povm(theta, edges[b], edges[b + 1], cutoff);
    CHECK((total - Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1))
              .cwiseAbs()
              .maxCoeff() < 1e-6);
  }
}

TEST_CASE("bin projectors are Hermitian with spectrum inside [0, 1]") {
  const Eigen::MatrixXcd pi = bin_povm(1.3, -0.9, 1.7, 5);
  CHECK((pi - pi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(pi);
  CHECK(eig.eigenvalues().minCoeff() > -1e-8);
  CHECK(eig.eigenvalues().maxCoeff() < 1.0 + 1e-8);
}

TEST_CASE("a bin symmetric about zero has no 0-1 coherence") {
  const Eigen::MatrixXcd pi = bin_povm(0.0, -0.8, 0.8, 4);
  CHECK(std::abs(pi(0, 1)) < 1e-14);
}

TEST_CASE("bin projector expectation equals the direct quadrature integral") {
  const DensityMatrix one = to_density(make_fock_state({1}, 5));
  const double a = 0.25, b = 1.4;
  const Eigen::MatrixXcd pi = bin_povm(0.9, a, b, 5);
  const double via_povm = (pi * one.elements).trace().real();
  // fine trapezoid on the bin as an independent route
  const int n = 20001;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * i / (n - 1);
    const double f = std::pow(quadrature_wavefunction(1, x), 2);
    acc += (i == 0 || i == n - 1) ? 0.5 * f : f;
  }
  acc *= (b - a) / (n - 1);
  CHECK(via_povm == Approx(acc).epsilon(1e-8));

  // and against the tabulated density of a coherence-carrying state
  PureState plus = make_fock_state({0}, 5);
  plus.amplitudes[0] = 1.0 / M_SQRT2;
  plus.amplitudes[1] = complexd(0.0, 1.0) / M_SQRT2;
  const DensityMatrix rho = to_density(plus);
  const double theta = 0.6;
  const Eigen::MatrixXcd pi2 = bin_povm(theta, a, b, 5);
  const QuadratureGrid grid(a, b, 8193);
  Eigen::VectorXcd u(6);
  for (int k = 0; k < 6; ++k) u[k] = std::polar(1.0, k * theta);
  const Eigen::MatrixXd bmat =
      (u.conjugate().asDiagonal() * rho.elements * u.asDiagonal()).real();
  const Eigen::MatrixXd psi = wavefunction_table(5, grid);
  const Eigen::VectorXd dens = ((psi * bmat).array() * psi.array()).rowwise().sum();
  CHECK((pi2 * rho.elements).trace().real() ==
        Approx(trapezoid(dens, grid.spacing())).epsilon(1e-8));
}

TEST_CASE("reconstruction recovers the vacuum") {
  const DensityMatrix vac = to_density(make_fock_state({0}, kDefaultCutoff));
  const auto samples = phase_tagged_samples(vac, 12, 8000, 21);
  const auto [rho, diag] = mle_reconstruct(bin_samples(samples, 50), kDefaultCutoff);
  CHECK(rho.elements(0, 0).real() >= 0.99);
  CHECK(std::abs(rho.elements.trace() - 1.0) < 1e-10);
}

TEST_CASE("reconstruction recovers a single photon") {
  const DensityMatrix one = to_density(make_fock_state({1}, kDefaultCutoff));
  const auto samples = phase_tagged_samples(one, 12, 9000, 22);
  const auto [rho, diag] = mle_reconstruct(bin_samples(samples, 50), kDefaultCutoff);
  CHECK(rho.elements(1, 1).real() >= 0.95);

  SECTION("the log-likelihood trajectory never decreases") {
    for (std::size_t i = 1; i < diag.log_likelihood.size(); ++i)
      CHECK(diag.log_likelihood[i] >= diag.log_likelihood[i - 1] - 1e-9);
  }
  SECTION("the iterate is physical") {
    CHECK((rho.elements - rho.elements.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.elements);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
  }
  SECTION("negativity of the reconstructed state survives at the origin") {
    const QuadratureGrid tiny(-1.0, 1.0, 3);
    const WignerGrid w = wigner_from_density(rho, tiny, tiny);
    CHECK(w.w(1, 1) <= -0.25);
  }
}

TEST_CASE("reconstruction recovers an even mixture without fake coherence") {
  DensityMatrix mix = to_density(make_fock_state({0}, kDefaultCutoff));
  mix.elements = 0.5 * (mix.elements +
                        to_density(make_fock_state({1}, kDefaultCutoff)).elements);
  const auto samples = phase_tagged_samples(mix, 12, 8000, 23);
  const auto [rho, diag] = mle_reconstruct(bin_samples(samples, 50), kDefaultCutoff);
  CHECK(rho.elements(0, 0).real() == Approx(0.5).margin(0.03));
  CHECK(rho.elements(1, 1).real() == Approx(0.5).margin(0.03));
  CHECK(std::abs(rho.elements(0, 1)) < 0.03);
}

TEST_CASE("displaced parity reproduces the closed-form Wigner values") {
  CHECK(analytic_fock_wigner(1, 0.0, 0.0) == Approx(-1.0 / M_PI).epsilon(1e-14));
  CHECK(analytic_fock_wigner(0, 1.0, 0.0) ==
        Approx(std::exp(-1.0) / M_PI).epsilon(1e-14));
  CHECK_THROWS_AS(analytic_fock_wigner(17, 0.0, 0.0), DomainError);

  const QuadratureGrid grid(-5.0, 5.0, 21);
  for (int n = 0; n <= 6; ++n) {
    const WignerGrid w =
        wigner_from_density(to_density(make_fock_state({n}, 6)), grid, grid);
    double worst = 0.0;
    for (int i = 0; i < 21; ++i)
      for (int j = 0; j < 21; ++j)
        worst = std::max(worst,
                         std::abs(w.w(i, j) - analytic_fock_wigner(n, w.xs[i], w.ps[j])));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Wigner values at the origin hit the parity extremes") {
  const QuadratureGrid tiny(-1.0, 1.0, 3);
  const WignerGrid w0 =
      wigner_from_density(to_density(make_fock_state({0}, 4)), tiny, tiny);
  CHECK(w0.w(1, 1) == Approx(1.0 / M_PI).margin(1e-9));
  const WignerGrid w1 =
      wigner_from_density(to_density(make_fock_state({1}, 4)), tiny, tiny);
  CHECK(w1.w(1, 1) == Approx(-1.0 / M_PI).margin(1e-9));
}

TEST_CASE("the Wigner function integrates to one over a covering grid") {
  const QuadratureGrid grid(-5.0, 5.0, 201);
  for (int n : {0, 1}) {
    const WignerGrid w =
        wigner_from_density(to_density(make_fock_state({n}, 6)), grid, grid);
    const double mass = w.w.sum() * grid.spacing() * grid.spacing();
    CHECK(mass == Approx(1.0).margin(1e-3));
  }
}

TEST_CASE("cutoffs past 16 are rejected for the displaced parity") {
  DensityMatrix rho;
  rho.num_modes = 1;
  rho.cutoff = 17;
  rho.elements = Eigen::MatrixXcd::Zero(18, 18);
  rho.elements(0, 0) = 1.0;
  const QuadratureGrid tiny(-1.0, 1.0, 3);
  CHECK_THROWS_AS(wigner_from_density(rho, tiny, tiny), CutoffTooLarge);
}
