#ifndef PLATE_ECHO_NYSTROM_HPP
#define PLATE_ECHO_NYSTROM_HPP

// Quadrature on 2n equispaced nodes t_j = j pi / n of [0, 2 pi):
//   - trapezoid weights pi / n for smooth periodic integrands,
//   - weights R_j(t) integrating ln(4 sin^2((t - tau)/2)) f(tau) exactly for
//     trigonometric polynomials f of degree n (Martensen-Kussmaul),
//   - the Fourier differentiation matrix of the trigonometric interpolant.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace plate_echo::nystrom {

inline void require_even(int n_nodes) {
  if (n_nodes < 2 || (n_nodes % 2) != 0)
    throw std::invalid_argument("node count must be even and positive, got " + std::to_string(n_nodes));
}

/// R_m for m = 0 .. 2n-1, so that the log-weight matrix is R(|i - j|).
template <class Real = double>
std::vector<Real> log_weights(int n_nodes) {
  require_even(n_nodes);
  const int n = n_nodes / 2;
  const Real pi = std::numbers::pi_v<Real>;
  std::vector<Real> w(static_cast<std::size_t>(n_nodes));
  for (int m = 0; m < n_nodes; ++m) {
    Real sum = 0;
    for (int p = 1; p < n; ++p) sum += std::cos(static_cast<Real>(p) * m * pi / n) / p;
    w[m] = -2 * pi / n * sum - pi / (static_cast<Real>(n) * n) * ((m % 2) ? -1 : 1);
  }
  return w;
}

/// Log-weight at integer node offset (i - j), periodic in the node index.
template <class Real>
Real log_weight(const std::vector<Real>& weights, int offset) {
  const int size = static_cast<int>(weights.size());
  int m = offset % size;
  if (m < 0) m += size;
  return weights[m];
}

inline Eigen::MatrixXd fourier_differentiation(int n_nodes) {
  require_even(n_nodes);
  const double h = 2.0 * std::numbers::pi / n_nodes;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int i = 0; i < n_nodes; ++i)
    for (int j = 0; j < n_nodes; ++j)
      if (i != j) {
        const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
        d(i, j) = 0.5 * sign / std::tan(0.5 * (i - j) * h);
      }
  return d;
}

}  // namespace plate_echo::nystrom

#endif  // PLATE_ECHO_NYSTROM_HPP
