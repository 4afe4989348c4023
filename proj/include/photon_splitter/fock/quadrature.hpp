#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/state.hpp"

namespace psplit {

struct QuadratureGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;
  Eigen::VectorXd values;

  QuadratureGrid(double lo, double hi, int n) : x_min(lo), x_max(hi), n_points(n) {
    if (!(lo < hi)) throw DomainError("grid needs x_min < x_max");
    if (n < 2) throw DomainError("grid needs at least 2 points");
    values = Eigen::VectorXd::LinSpaced(n, lo, hi);
  }

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
};

inline QuadratureGrid default_grid() { return QuadratureGrid(-8.0, 8.0, 4096); }

// Oscillator eigenfunction psi_n(x) = H_n(x) e^{-x^2/2} / (pi^{1/4} sqrt(2^n n!))
// in the x = (a + a')/sqrt2 convention (vacuum variance 1/2), by the stable
// upward recurrence.
inline double quadrature_wavefunction(int n, double x) {
  if (n < 0) throw DomainError("photon number must be >= 0");
  const double psi0 = std::exp(-0.5 * x * x) / std::pow(M_PI, 0.25);
  if (n == 0) return psi0;
  double prev = psi0;
  double cur = M_SQRT2 * x * psi0;
  for (int k = 2; k <= n; ++k) {
    const double next =
        std::sqrt(2.0 / k) * x * cur - std::sqrt(double(k - 1) / k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Column n holds psi_n over the grid.
inline Eigen::MatrixXd wavefunction_table(int n_max, const QuadratureGrid& grid) {
  Eigen::MatrixXd psi(grid.n_points, n_max + 1);
  for (int g = 0; g < grid.n_points; ++g) {
    const double x = grid.values[g];
    psi(g, 0) = quadrature_wavefunction(0, x);
    if (n_max >= 1) psi(g, 1) = M_SQRT2 * x * psi(g, 0);
    for (int k = 2; k <= n_max; ++k)
      psi(g, k) =
          std::sqrt(2.0 / k) * x * psi(g, k - 1) - std::sqrt(double(k - 1) / k) * psi(g, k - 2);
  }
  return psi;
}

inline double trapezoid(const Eigen::VectorXd& f, double dx) {
  return dx * (f.sum() - 0.5 * (f[0] + f[f.size() - 1]));
}

// p(x|theta) = sum_{m,n} rho_mn psi_m psi_n e^{i(n-m)theta}. Raises when the
// grid misses more than 1e-6 of the distribution's mass.
inline Eigen::VectorXd quadrature_density(const DensityMatrix& rho, double theta,
                                          const QuadratureGrid& grid) {
  if (rho.num_modes != 1) throw DomainError("density is defined per mode");
  const int d = rho.dim_per_mode();
  Eigen::VectorXcd u(d);
  for (int n = 0; n < d; ++n) u[n] = std::polar(1.0, n * theta);
  // B = U' rho U has B_mn = rho_mn e^{i(n-m)theta}; Im(B) cancels by symmetry
  const Eigen::MatrixXd b =
      (u.conjugate().asDiagonal() * rho.elements * u.asDiagonal()).real();
  const Eigen::MatrixXd psi = wavefunction_table(rho.cutoff, grid);
  Eigen::VectorXd dens = ((psi * b).array() * psi.array()).rowwise().sum();
  if (1.0 - trapezoid(dens, grid.spacing()) > 1e-6)
    throw GridTooNarrow("grid misses more than 1e-6 of the quadrature mass");
  return dens;
}

// Matrix of x_theta = (a e^{-i theta} + a' e^{i theta})/sqrt2 in the
// truncated basis; <1|x_theta|0> = e^{i theta}/sqrt2.
inline Eigen::MatrixXcd quadrature_operator(int cutoff, double theta) {
  const int d = cutoff + 1;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    x(n - 1, n) = std::polar(std::sqrt(n / 2.0), -theta);
    x(n, n - 1) = std::conj(x(n - 1, n));
  }
  return x;
}

// Exact <x_theta1 (x) x_theta2> on a two-mode pure state.
inline double expectation_xx(const PureState& s, double theta1, double theta2) {
  if (s.num_modes != 2) throw DomainError("needs a two-mode state");
  const int d = s.dim_per_mode();
  using RowMat = Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMat> c(s.amplitudes.data(), d, d);
  const Eigen::MatrixXcd x1 = quadrature_operator(s.cutoff, theta1);
  const Eigen::MatrixXcd x2 = quadrature_operator(s.cutoff, theta2);
  const complexd v = (c.conjugate().cwiseProduct(x1 * c * x2.transpose())).sum();
  return v.real();
}

// Exact <x_theta^2> for a single-mode density matrix.
inline double quadrature_second_moment(const DensityMatrix& rho, double theta) {
  if (rho.num_modes != 1) throw DomainError("needs a single-mode state");
  const Eigen::MatrixXcd x = quadrature_operator(rho.cutoff, theta);
  return (rho.elements * x * x).trace().real();
}

}  // namespace psplit
