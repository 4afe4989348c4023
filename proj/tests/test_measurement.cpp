#include <catch2/catch_amalgamated.hpp>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "photon_splitter/measurement/click.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/measurement/loss.hpp"
#include "photon_splitter/sources.hpp"
#include "test_util.hpp"

using namespace psplit;
using Catch::Approx;

namespace {

// Pattern indices for two detectors: bit 0 = first mode (c), bit 1 = second (d).
constexpr std::size_t kNone = 0, kConly = 1, kDonly = 2, kBoth = 3;

std::vector<double> xs_of(const std::vector<QuadratureSample>& samples) {
  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) xs.push_back(s.x);
  return xs;
}

// CDF of the tabulated sampling distribution at an arbitrary point: the
// inverse-CDF sampler draws exactly from the piecewise-linear CDF, so this is
// the exact law of its output.
double table_cdf_at(const CdfTable& t, double x) {
  const double pos = (x - t.x_min) / t.dx;
  if (pos <= 0.0) return 0.0;
  if (pos >= double(t.cdf.size() - 1)) return 1.0;
  const auto i = static_cast<Eigen::Index>(pos);
  const double frac = pos - double(i);
  return t.cdf[i] + frac * (t.cdf[i + 1] - t.cdf[i]);
}

// Chi-square goodness of fit on 50 equal-probability bins.
double gof_p_value(const DensityMatrix& rho, double theta, std::int64_t n,
                   std::uint64_t seed) {
  const auto grid = default_grid();
  const CdfTable table = build_cdf_table(quadrature_density(rho, theta, grid), grid);

  const int n_bins = 50;
  std::vector<double> edges(n_bins + 1);
  edges[0] = grid.x_min;
  edges[n_bins] = grid.x_max;
  for (int k = 1; k < n_bins; ++k) edges[k] = table.sample(double(k) / n_bins);

  RngStream rng(seed);
  const auto samples = sample_homodyne(rho, theta, n, rng);
  std::vector<double> counts(n_bins, 0.0);
  for (const auto& s : samples) {
    int b = int(std::upper_bound(edges.begin(), edges.end(), s.x) - edges.begin()) - 1;
    b = std::clamp(b, 0, n_bins - 1);
    counts[b] += 1.0;
  }

  double stat = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    const double expected =
        double(n) * (table_cdf_at(table, edges[b + 1]) - table_cdf_at(table, edges[b]));
    stat += (counts[b] - expected) * (counts[b] - expected) / expected;
  }
  return cdf(complement(boost::math::chi_squared(n_bins - 1), stat));
}

}  // namespace

TEST_CASE("ideal detectors after the splitter click one at a time") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  const auto p = click_probabilities(s, {{1.0}, {1.0}});
  REQUIRE(p.size() == 4);
  CHECK(p[kConly] == Approx(0.5).margin(1e-12));
  CHECK(p[kDonly] == Approx(0.5).margin(1e-12));
  CHECK(p[kBoth] == Approx(0.0).margin(1e-15));
  CHECK(p[kNone] == Approx(0.0).margin(1e-15));
}

TEST_CASE("half-efficient detectors split the miss mass evenly") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  const auto p = click_probabilities(s, {{0.5}, {0.5}});
  CHECK(p[kConly] == Approx(0.25).margin(1e-12));
  CHECK(p[kDonly] == Approx(0.25).margin(1e-12));
  CHECK(p[kNone] == Approx(0.5).margin(1e-12));
  CHECK(p[kBoth] == Approx(0.0).margin(1e-15));
}

TEST_CASE("unbalanced efficiencies weight the single-click rates") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  const auto p = click_probabilities(s, {{0.3}, {0.7}});
  CHECK(p[kConly] == Approx(0.15).margin(1e-12));
  CHECK(p[kDonly] == Approx(0.35).margin(1e-12));
  CHECK(p[kNone] == Approx(0.5).margin(1e-12));
  CHECK(p[kBoth] == Approx(0.0).margin(1e-15));
}

TEST_CASE("a photon pair always fires both ideal detectors") {
  const auto p = click_probabilities(make_fock_state({1, 1}, 4), {{1.0}, {1.0}});
  CHECK(p[kBoth] == Approx(1.0).margin(1e-12));
  CHECK(p[kNone] + p[kConly] + p[kDonly] == Approx(0.0).margin(1e-15));
}

TEST_CASE("pattern probabilities agree between pure and density inputs") {
  RngStream rng(7);
  const auto s = testutil::random_conserved_state(4, rng);
  const std::vector<DetectorSpec> specs = {{0.65}, {0.4}};
  const auto p_pure = click_probabilities(s, specs);
  const auto p_dens = click_probabilities(to_density(s), specs);
  double total = 0.0;
  for (std::size_t i = 0; i < p_pure.size(); ++i) {
    CHECK(p_pure[i] == Approx(p_dens[i]).margin(1e-13));
    CHECK(p_pure[i] >= 0.0);
    total += p_pure[i];
  }
  CHECK(total == Approx(1.0).margin(1e-12));
}

TEST_CASE("detector specs are validated") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  CHECK_THROWS_AS(click_probabilities(s, {{1.0}}), SpecCountMismatch);
  CHECK_THROWS_AS(click_probabilities(s, {{1.0}, {1.0}, {1.0}}), SpecCountMismatch);
  CHECK_THROWS_AS(click_probabilities(s, {{1.0}, {1.2}}), DomainError);
  CHECK_THROWS_AS(click_probabilities(s, {{-0.1}, {1.0}}), DomainError);
}

TEST_CASE("sampled clicks never coincide for a split single photon") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  RngStream rng(42);
  const std::int64_t n = 100000;
  const auto records = sample_clicks(s, {{1.0}, {1.0}}, n, rng);
  REQUIRE(records.size() == std::size_t(n));

  std::int64_t c_only = 0, d_only = 0, both = 0, none = 0;
  for (const auto& r : records) {
    REQUIRE(r.pattern.size() == 2);
    if (r.pattern[0] && r.pattern[1])
      ++both;
    else if (r.pattern[0])
      ++c_only;
    else if (r.pattern[1])
      ++d_only;
    else
      ++none;
  }
  CHECK(both == 0);
  CHECK(none == 0);
  // 5 sigma binomial band around 1/2
  const double band = 5.0 * std::sqrt(0.25 / double(n));
  CHECK(std::abs(double(c_only) / double(n) - 0.5) < band);
  CHECK(std::abs(double(d_only) / double(n) - 0.5) < band);
}

TEST_CASE("empirical pattern frequencies track the exact table") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  const std::vector<DetectorSpec> specs = {{0.6}, {0.8}};
  const auto p = click_probabilities(s, specs);
  RngStream rng(11);
  const std::int64_t n = 100000;
  const auto records = sample_clicks(s, specs, n, rng);

  std::vector<double> freq(4, 0.0);
  for (const auto& r : records)
    freq[(r.pattern[1] ? 2u : 0u) | (r.pattern[0] ? 1u : 0u)] += 1.0 / double(n);
  for (std::size_t pat = 0; pat < 4; ++pat) {
    const double sigma = std::sqrt(p[pat] * (1.0 - p[pat]) / double(n));
    CHECK(std::abs(freq[pat] - p[pat]) <= 5.0 * sigma + 1e-12);
  }
}

TEST_CASE("vacuum never clicks at any efficiency") {
  const auto vac = make_fock_state({0, 0}, 3);
  RngStream rng(5);
  for (const auto& r : sample_clicks(vac, {{1.0}, {0.3}}, 2000, rng)) {
    CHECK_FALSE(r.pattern[0]);
    CHECK_FALSE(r.pattern[1]);
  }
}

TEST_CASE("click sampling is reproducible for a fixed seed") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  RngStream a(123), b(123);
  const auto ra = sample_clicks(s, {{0.7}, {0.7}}, 5000, a);
  const auto rb = sample_clicks(s, {{0.7}, {0.7}}, 5000, b);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i].pattern == rb[i].pattern);
}

TEST_CASE("vacuum homodyne variance is the zero-point half") {
  RngStream rng(42);
  const auto xs = xs_of(sample_homodyne(to_density(make_fock_state({0}, 6)), 0.0,
                                        100000, rng));
  CHECK(std::abs(testutil::mean(xs)) < 0.011);
  CHECK(testutil::variance(xs) == Approx(0.5).margin(0.01));
}

TEST_CASE("one-photon homodyne variance is three halves") {
  RngStream rng(42);
  const auto xs = xs_of(sample_homodyne(to_density(make_fock_state({1}, 6)), 0.0,
                                        100000, rng));
  CHECK(std::abs(testutil::mean(xs)) < 0.016);
  CHECK(testutil::variance(xs) == Approx(1.5).margin(0.02));
}

TEST_CASE("the one-photon quadrature histogram dips at zero") {
  const std::int64_t n = 100000;
  RngStream r0(1), r1(2);
  const auto vac = xs_of(sample_homodyne(to_density(make_fock_state({0}, 6)), 0.0, n, r0));
  const auto one = xs_of(sample_homodyne(to_density(make_fock_state({1}, 6)), 0.0, n, r1));
  auto near_zero = [](const std::vector<double>& xs) {
    std::int64_t k = 0;
    for (double x : xs) k += std::abs(x) <= 0.05;
    return double(k);
  };
  CHECK(near_zero(one) < 0.1 * near_zero(vac));
}

TEST_CASE("sampled mean follows the phase of a zero-one superposition") {
  // (|0> + i|1>)/sqrt2 has <x_theta> = sin(theta)/sqrt2
  PureState s = make_fock_state({0}, 6);
  s.amplitudes[0] = 1.0 / std::sqrt(2.0);
  s.amplitudes[1] = complexd(0.0, 1.0 / std::sqrt(2.0));
  const auto rho = to_density(s);
  const std::int64_t n = 100000;
  for (double theta : {0.0, 0.7, M_PI / 2, 2.4, 4.0}) {
    RngStream rng(900 + std::uint64_t(theta * 100));
    const auto xs = xs_of(sample_homodyne(rho, theta, n, rng));
    const double expect = std::sin(theta) / std::sqrt(2.0);
    // Var = <x^2> - <x>^2 = 1 - sin^2(theta)/2 <= 1
    CHECK(std::abs(testutil::mean(xs) - expect) < 5.0 / std::sqrt(double(n)));
  }
}

TEST_CASE("homodyne samples pass goodness of fit against the tabulated law") {
  CHECK(gof_p_value(to_density(make_fock_state({0}, 6)), 0.0, 100000, 42) > 0.001);
  CHECK(gof_p_value(to_density(make_fock_state({1}, 6)), 1.1, 100000, 43) > 0.001);
  const auto heralded = herald(two_mode_squeezed({0.1, 1.0, 6}), 1.0).first;
  CHECK(gof_p_value(heralded, 0.3, 100000, 44) > 0.001);
}

TEST_CASE("homodyne sampling is reproducible for a fixed seed") {
  const auto rho = to_density(make_fock_state({1}, 6));
  RngStream a(77), b(77);
  const auto xa = xs_of(sample_homodyne(rho, 0.4, 4000, a));
  const auto xb = xs_of(sample_homodyne(rho, 0.4, 4000, b));
  REQUIRE(xa.size() == xb.size());
  for (std::size_t i = 0; i < xa.size(); ++i) CHECK(xa[i] == xb[i]);
}

TEST_CASE("joint samples of a split photon correlate with the phase difference") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  const std::int64_t n = 100000;

  RngStream rng_plus(42);
  const auto plus = sample_joint_homodyne(s, -M_PI / 2, 0.0, n, rng_plus);
  std::vector<double> x1, x2;
  for (const auto& [a, b] : plus) {
    x1.push_back(a.x);
    x2.push_back(b.x);
  }
  CHECK(testutil::pearson(x1, x2) == Approx(0.5).margin(0.03));

  RngStream rng_minus(43);
  x1.clear();
  x2.clear();
  for (const auto& [a, b] : sample_joint_homodyne(s, M_PI / 2, 0.0, n, rng_minus)) {
    x1.push_back(a.x);
    x2.push_back(b.x);
  }
  CHECK(testutil::pearson(x1, x2) == Approx(-0.5).margin(0.03));
}

TEST_CASE("split-photon joint marginals have unit variance") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  RngStream rng(19);
  std::vector<double> x1, x2;
  for (const auto& [a, b] : sample_joint_homodyne(s, 0.3, 1.7, 100000, rng)) {
    x1.push_back(a.x);
    x2.push_back(b.x);
  }
  // reduced state (|0><0| + |1><1|)/2: variance (1/2 + 3/2)/2 = 1, any phase
  CHECK(testutil::variance(x1) == Approx(1.0).margin(0.03));
  CHECK(testutil::variance(x2) == Approx(1.0).margin(0.03));
}

TEST_CASE("two-mode vacuum shows no quadrature correlation") {
  const auto vac = make_fock_state({0, 0}, 6);
  for (double dt : {0.0, 1.0, 2.5}) {
    RngStream rng(50 + std::uint64_t(dt * 10));
    std::vector<double> x1, x2;
    for (const auto& [a, b] : sample_joint_homodyne(vac, dt, 0.0, 100000, rng)) {
      x1.push_back(a.x);
      x2.push_back(b.x);
    }
    CHECK(std::abs(testutil::pearson(x1, x2)) < 0.01);
  }
}

TEST_CASE("joint sample covariance matches the operator expectation") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  const std::int64_t n = 20000;
  int idx = 0;
  for (double dt : {0.0, M_PI / 3, M_PI / 2, M_PI, 4.0, 5.5}) {
    RngStream rng(600 + idx++);
    const auto pairs = sample_joint_homodyne(s, dt, 0.0, n, rng);
    // both marginal means vanish, so the product mean estimates the covariance
    std::vector<double> prod;
    prod.reserve(pairs.size());
    for (const auto& [a, b] : pairs) prod.push_back(a.x * b.x);
    const double oracle = expectation_xx(s, dt, 0.0);
    const double se = std::sqrt(testutil::variance(prod) / double(n));
    CHECK(std::abs(testutil::mean(prod) - oracle) <= 5.0 * se);
  }
}

TEST_CASE("joint sampling is reproducible for a fixed seed") {
  const auto s = testutil::split_photon_state(M_PI / 2);
  RngStream a(31), b(31);
  const auto pa = sample_joint_homodyne(s, 0.9, 0.2, 3000, a);
  const auto pb = sample_joint_homodyne(s, 0.9, 0.2, 3000, b);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].first.x == pb[i].first.x);
    CHECK(pa[i].second.x == pb[i].second.x);
  }
}

TEST_CASE("joint sampler rejects non-two-mode states") {
  CHECK_THROWS_AS(
      JointHomodyneSampler(make_fock_state({0}, 4), 0.0, 0.0),
      DomainError);
  CHECK_THROWS_AS(
      JointHomodyneSampler(make_fock_state({0, 0, 0}, 2), 0.0, 0.0),
      DomainError);
}

TEST_CASE("attenuation mixes a photon toward vacuum") {
  const auto one = to_density(make_fock_state({1}, 6));
  for (double eta : {0.0, 0.25, 0.5, 0.8}) {
    const auto out = attenuate(one, eta);
    CHECK(out.elements(1, 1).real() == Approx(eta).margin(1e-12));
    CHECK(out.elements(0, 0).real() == Approx(1.0 - eta).margin(1e-12));
    CHECK(std::abs(out.elements.trace() - 1.0) < 1e-12);
  }
  // eta = 1 is the identity channel
  const auto same = attenuate(one, 1.0);
  CHECK((same.elements - one.elements).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("attenuation preserves trace and positivity on a mixed state") {
  const auto heralded = herald(two_mode_squeezed({0.2, 0.8, 6}), 0.9).first;
  const auto out = attenuate(heralded, 0.6);
  CHECK(std::abs(out.elements.trace() - 1.0) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.elements);
  CHECK(eig.eigenvalues().minCoeff() > -1e-10);
  CHECK((out.elements - out.elements.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cdf tables are shared through the content cache") {
  const auto rho = to_density(make_fock_state({1}, 6));
  const auto a = cached_cdf_table(rho, 0.25, default_grid());
  const auto b = cached_cdf_table(rho, 0.25, default_grid());
  CHECK(a.get() == b.get());
  const auto c = cached_cdf_table(rho, 0.35, default_grid());
  CHECK(a.get() != c.get());
}
