#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/quadrature.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/rng.hpp"

namespace psplit {

struct QuadratureSample {
  double x = 0.0;
  double theta = 0.0;  // kept in [0, 2pi)
  int mode = 0;
  std::int64_t trial_index = 0;
};

inline double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * M_PI);
  if (t < 0.0) t += 2.0 * M_PI;
  return t;
}

// Tabulated inverse CDF over a uniform grid; linear interpolation inside a
// bin matches the trapezoid CDF to O(dx^2).
struct CdfTable {
  double x_min = 0.0;
  double dx = 0.0;
  Eigen::VectorXd cdf;  // cdf[0] = 0, cdf[n-1] = 1

  double sample(double u) const {
    const double* begin = cdf.data();
    const double* end = begin + cdf.size();
    const double* it = std::upper_bound(begin, end, u);
    if (it == begin) return x_min;
    if (it == end) return x_min + dx * static_cast<double>(cdf.size() - 1);
    const Eigen::Index hi = it - begin;
    const double lo_c = cdf[hi - 1];
    const double span = cdf[hi] - lo_c;
    const double frac = span > 0.0 ? (u - lo_c) / span : 0.0;
    return x_min + dx * (static_cast<double>(hi - 1) + frac);
  }
};

inline CdfTable build_cdf_table(const Eigen::VectorXd& density,
                                const QuadratureGrid& grid) {
  CdfTable t;
  t.x_min = grid.x_min;
  t.dx = grid.spacing();
  t.cdf.resize(density.size());
  t.cdf[0] = 0.0;
  for (Eigen::Index i = 1; i < density.size(); ++i)
    t.cdf[i] = t.cdf[i - 1] +
               0.5 * t.dx * (std::max(density[i - 1], 0.0) + std::max(density[i], 0.0));
  const double total = t.cdf[t.cdf.size() - 1];
  if (!(total > 0.0)) throw DomainError("density has no mass on the grid");
  t.cdf /= total;
  t.cdf[t.cdf.size() - 1] = 1.0;
  return t;
}

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace detail

// Tables are rebuilt per (state, theta, grid) and cached by content hash.
// The cache only ever deduplicates work; sampled values are independent of
// its state.
inline std::shared_ptr<const CdfTable> cached_cdf_table(const DensityMatrix& rho,
                                                        double theta,
                                                        const QuadratureGrid& grid) {
  std::uint64_t key = 0xcbf29ce484222325ull;
  key = detail::fnv1a(rho.elements.data(),
                      sizeof(complexd) * static_cast<std::size_t>(rho.elements.size()), key);
  const double meta[4] = {theta, grid.x_min, grid.x_max, double(grid.n_points)};
  key = detail::fnv1a(meta, sizeof(meta), key);

  static std::mutex cache_mutex;
  static std::unordered_map<std::uint64_t, std::shared_ptr<const CdfTable>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const CdfTable>(
      build_cdf_table(quadrature_density(rho, theta, grid), grid));
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache.size() >= 256) cache.clear();
  return cache.emplace(key, std::move(table)).first->second;
}

inline std::vector<QuadratureSample> sample_homodyne(const DensityMatrix& rho,
                                                     double theta,
                                                     std::int64_t n_samples,
                                                     RngStream& rng) {
  const auto table = cached_cdf_table(rho, theta, default_grid());
  std::vector<QuadratureSample> out;
  out.reserve(n_samples);
  for (std::int64_t i = 0; i < n_samples; ++i)
    out.push_back({table->sample(rng.uniform()), wrap_angle(theta), 0, i});
  return out;
}

// Sampler for the joint quadrature density of a two-mode pure state,
// |sum_{n1,n2} c_{n1 n2} psi_{n1}(x1) psi_{n2}(x2) e^{-i n1 th1} e^{-i n2 th2}|^2:
// x1 by inverse CDF of the exact marginal, then x2 from the exact
// conditional at the drawn x1. Each pair consumes exactly two uniforms, so
// per-trial streams reproduce identically under any threading.
class JointHomodyneSampler {
 public:
  JointHomodyneSampler(const PureState& s, double theta1, double theta2,
                       const QuadratureGrid& grid = default_grid())
      : dim_(s.dim_per_mode()), grid_(grid), psi_(wavefunction_table(s.cutoff, grid)) {
    if (s.num_modes != 2) throw DomainError("needs a two-mode state");
    using RowMat =
        Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> c(s.amplitudes.data(), dim_, dim_);
    Eigen::VectorXcd u1(dim_), u2(dim_);
    for (int n = 0; n < dim_; ++n) {
      u1[n] = std::polar(1.0, -n * theta1);
      u2[n] = std::polar(1.0, -n * theta2);
    }
    w_ = u1.asDiagonal() * c * u2.asDiagonal();
    const Eigen::MatrixXcd f = psi_ * w_;
    const Eigen::VectorXd marginal = f.rowwise().squaredNorm();
    if (1.0 - trapezoid(marginal, grid.spacing()) > 1e-6)
      throw GridTooNarrow("grid misses more than 1e-6 of the quadrature mass");
    marginal_cdf_ = build_cdf_table(marginal, grid);
  }

  std::pair<double, double> sample_pair(RngStream& rng) const {
    const double x1 = marginal_cdf_.sample(rng.uniform());
    Eigen::VectorXd psi1(dim_);
    psi1[0] = quadrature_wavefunction(0, x1);
    if (dim_ > 1) psi1[1] = M_SQRT2 * x1 * psi1[0];
    for (int k = 2; k < dim_; ++k)
      psi1[k] = std::sqrt(2.0 / k) * x1 * psi1[k - 1] -
                std::sqrt(double(k - 1) / k) * psi1[k - 2];
    const Eigen::VectorXcd g = w_.transpose() * psi1;

    static thread_local Eigen::VectorXd re, im, cond, cdf;
    re.noalias() = psi_ * g.real();
    im.noalias() = psi_ * g.imag();
    cond = re.cwiseAbs2() + im.cwiseAbs2();
    cdf.resize(cond.size());
    cdf[0] = 0.0;
    const double dx = grid_.spacing();
    for (Eigen::Index i = 1; i < cond.size(); ++i)
      cdf[i] = cdf[i - 1] + 0.5 * dx * (cond[i - 1] + cond[i]);
    const double target = rng.uniform() * cdf[cdf.size() - 1];
    const double* begin = cdf.data();
    const double* it = std::upper_bound(begin, begin + cdf.size(), target);
    double x2;
    if (it == begin) {
      x2 = grid_.x_min;
    } else if (it == begin + cdf.size()) {
      x2 = grid_.x_max;
    } else {
      const Eigen::Index hi = it - begin;
      const double span = cdf[hi] - cdf[hi - 1];
      const double frac = span > 0.0 ? (target - cdf[hi - 1]) / span : 0.0;
      x2 = grid_.x_min + dx * (static_cast<double>(hi - 1) + frac);
    }
    return {x1, x2};
  }

 private:
  int dim_;
  QuadratureGrid grid_;
  Eigen::MatrixXd psi_;
  Eigen::MatrixXcd w_;
  CdfTable marginal_cdf_;
};

inline std::vector<std::pair<QuadratureSample, QuadratureSample>>
sample_joint_homodyne(const PureState& state, double theta1, double theta2,
                      std::int64_t n_samples, RngStream& rng) {
  const JointHomodyneSampler sampler(state, theta1, theta2);
  std::vector<std::pair<QuadratureSample, QuadratureSample>> out;
  out.reserve(n_samples);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const auto [x1, x2] = sampler.sample_pair(rng);
    out.push_back({QuadratureSample{x1, wrap_angle(theta1), 0, i},
                   QuadratureSample{x2, wrap_angle(theta2), 1, i}});
  }
  return out;
}

}  // namespace psplit
