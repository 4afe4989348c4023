#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/fock/quadrature.hpp"

namespace psplit {
namespace detail {

struct GaussLegendre {
  Eigen::VectorXd nodes;    // on [-1, 1]
  Eigen::VectorXd weights;  // sum to 2
};

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights
// come from the first eigenvector components.
inline GaussLegendre gauss_legendre(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j);
  GaussLegendre gl;
  gl.nodes = eig.eigenvalues();
  gl.weights = 2.0 * eig.eigenvectors().row(0).array().square();
  return gl;
}

inline const GaussLegendre& gauss_legendre_32() {
  static const GaussLegendre gl = gauss_legendre(32);
  return gl;
}

}  // namespace detail

// POVM element of the quadrature interval [lo, hi] at LO phase theta. The
// eigenkets of x_theta are e^{i theta n} |x>, so
// Pi_mn = <m|x><x|n> integrated = e^{i(m-n)theta} * integral of psi_m psi_n,
// which makes Tr[Pi rho] the bin mass of the quadrature density.
inline Eigen::MatrixXcd bin_povm(double theta, double lo, double hi, int cutoff) {
  if (!(lo < hi)) throw DomainError("bin needs lo < hi");
  const int d = cutoff + 1;
  const auto& gl = detail::gauss_legendre_32();
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd psi(d);
  for (int q = 0; q < gl.nodes.size(); ++q) {
    const double x = c + h * gl.nodes[q];
    const double w = h * gl.weights[q];
    psi[0] = quadrature_wavefunction(0, x);
    if (d > 1) psi[1] = M_SQRT2 * x * psi[0];
    for (int k = 2; k < d; ++k)
      psi[k] = std::sqrt(2.0 / k) * x * psi[k - 1] -
               std::sqrt(double(k - 1) / k) * psi[k - 2];
    overlap.noalias() += w * (psi * psi.transpose());
  }
  Eigen::VectorXcd u(d);
  for (int n = 0; n < d; ++n) u[n] = std::polar(1.0, n * theta);
  return u.asDiagonal() * overlap * u.conjugate().asDiagonal();
}

}  // namespace psplit
