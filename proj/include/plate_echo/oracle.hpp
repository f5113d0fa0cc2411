#ifndef PLATE_ECHO_ORACLE_HPP
#define PLATE_ECHO_ORACLE_HPP

// Separation-of-variables solution for a clamped circular cavity of radius a
// centred at the origin. With u_inc = sum_n i^n J_n(kr) e^{in(theta - theta_d)},
// the scattered field is
//
//   u_scat = sum_n i^n [alpha_n H_n^(1)(kr) + beta_n K_n(kr)] e^{in(theta - theta_d)},
//
// where (alpha_n, beta_n) enforce u = 0 and d_r u = 0 at r = a mode by mode.
// alpha_n and beta_n do not depend on the incident direction.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "plate_echo/error.hpp"
#include "plate_echo/forward.hpp"
#include "plate_echo/specfun.hpp"

namespace plate_echo {

/// Far-field constant per normalized mode. The large-radius form
/// H_n(kr) ~ sqrt(2/(pi k r)) exp(i(kr - n pi/2 - pi/4)) absorbs i^n, and
/// dividing by exp(i pi/4)/sqrt(8 pi k) leaves -4i for every n.
inline const cdouble kDiskFarFieldConstant{0.0, -4.0};

struct DiskScatteringSolution {
  double radius = 1.0;
  double k = 1.0;
  int order = 0;  // truncation M; modes -M..M
  Point direction = Point(1.0, 0.0);
  std::vector<cdouble> alpha;  // index n + M
  std::vector<cdouble> beta;

  cdouble a(int n) const { return alpha.at(static_cast<std::size_t>(n + order)); }
  cdouble b(int n) const { return beta.at(static_cast<std::size_t>(n + order)); }
};

inline int default_disk_order(double radius, double k) {
  return static_cast<int>(std::ceil(k * radius)) + 20;
}

inline DiskScatteringSolution solve_disk(double radius, double k, int order, const Point& d) {
  if (!(radius > 0.0) || !(k > 0.0)) throw std::invalid_argument("solve_disk: radius and k must be positive");
  if (order < static_cast<int>(std::ceil(k * radius)) + 20)
    throw std::invalid_argument("solve_disk: truncation order below ceil(ka) + 20");

  const double ka = k * radius;
  const int top = order + 1;
  std::vector<double> j(top + 1), y(top + 1), kn(top + 1);
  specfun::bessel_jy_table(top, ka, j, y);
  specfun::bessel_k_table(top, ka, kn);

  DiskScatteringSolution sol;
  sol.radius = radius;
  sol.k = k;
  sol.order = order;
  sol.direction = d.normalized();
  sol.alpha.assign(static_cast<std::size_t>(2 * order + 1), 0.0);
  sol.beta.assign(static_cast<std::size_t>(2 * order + 1), 0.0);

  double largest = 0.0;
  for (int n = 0; n <= order; ++n) {
    const double jn = j[n];
    const double djn = n == 0 ? -j[1] : 0.5 * (j[n - 1] - j[n + 1]);
    const cdouble hn(j[n], y[n]);
    const cdouble dhn = n == 0 ? -cdouble(j[1], y[1])
                               : 0.5 * (cdouble(j[n - 1], y[n - 1]) - cdouble(j[n + 1], y[n + 1]));
    const double knv = kn[n];
    const double dkn = n == 0 ? -kn[1] : -0.5 * (kn[n - 1] + kn[n + 1]);

    // [H  K ] [alpha]     [J ]
    // [H' K'] [beta ] = - [J']
    const cdouble det = hn * dkn - knv * dhn;
    if (!std::isfinite(std::abs(det)) || std::abs(det) == 0.0)
      throw SolverError("solve_disk: singular mode " + std::to_string(n));
    const cdouble alpha = (-jn * dkn + knv * djn) / det;
    const cdouble beta = (-hn * djn + jn * dhn) / det;

    sol.alpha[order + n] = alpha;
    sol.alpha[order - n] = alpha;
    sol.beta[order + n] = beta;
    sol.beta[order - n] = (n & 1) ? -beta : beta;
    largest = std::max(largest, std::abs(alpha));
  }
  if (std::abs(sol.alpha[2 * order]) > 1e-12 * largest)
    throw SolverError("solve_disk: truncation order too small");
  return sol;
}

inline cdouble disk_far_field(const DiskScatteringSolution& sol, const Point& xhat) {
  const double phase = std::atan2(xhat.y(), xhat.x()) - std::atan2(sol.direction.y(), sol.direction.x());
  cdouble sum = 0.0;
  for (int n = -sol.order; n <= sol.order; ++n) sum += sol.a(n) * std::exp(cdouble(0.0, n * phase));
  return kDiskFarFieldConstant * sum;
}

/// Scattered field and its radial derivative at x (|x| >= radius) from the series.
inline std::pair<cdouble, cdouble> disk_scattered_field(const DiskScatteringSolution& sol, const Point& x) {
  const double r = x.norm();
  const double kr = sol.k * r;
  const int top = sol.order + 1;
  std::vector<double> j(top + 1), y(top + 1), kn(top + 1);
  specfun::bessel_jy_table(top, kr, j, y);
  specfun::bessel_k_table(top, kr, kn);
  const double phase = std::atan2(x.y(), x.x()) - std::atan2(sol.direction.y(), sol.direction.x());

  cdouble u = 0.0, du = 0.0;
  for (int n = -sol.order; n <= sol.order; ++n) {
    const int m = std::abs(n);
    const double sign = (n < 0 && (m & 1)) ? -1.0 : 1.0;  // Z_{-m} = (-1)^m Z_m for J, Y
    const cdouble h = sign * cdouble(j[m], y[m]);
    const cdouble dh = sign * (m == 0 ? -cdouble(j[1], y[1])
                                      : 0.5 * (cdouble(j[m - 1], y[m - 1]) - cdouble(j[m + 1], y[m + 1])));
    const double kv = kn[m];
    const double dkv = m == 0 ? -kn[1] : -0.5 * (kn[m - 1] + kn[m + 1]);
    const cdouble mode = std::pow(cdouble(0.0, 1.0), n) * std::exp(cdouble(0.0, n * phase));
    u += mode * (sol.a(n) * h + sol.b(n) * kv);
    du += mode * sol.k * (sol.a(n) * dh + sol.b(n) * dkv);
  }
  return {u, du};
}

/// Far-field matrix of the disk built from the series solution.
inline FarFieldMatrix disk_far_field_matrix(double radius, double k, int n_dirs, int order = -1) {
  if (order < 0) order = default_disk_order(radius, k);
  const auto dirs = uniform_directions(n_dirs);
  const auto sol = solve_disk(radius, k, order, Point(1.0, 0.0));
  FarFieldMatrix f;
  f.k = k;
  f.shape = "circle";
  f.directions = dirs;
  f.entries.resize(n_dirs, n_dirs);
  for (int i = 0; i < n_dirs; ++i)
    for (int jd = 0; jd < n_dirs; ++jd) {
      // Only theta_x - theta_d matters for the disk.
      const double phase = 2.0 * std::numbers::pi * (i - jd) / n_dirs;
      f.entries(i, jd) = disk_far_field(sol, Point(std::cos(phase), std::sin(phase)));
    }
  return f;
}

}  // namespace plate_echo

#endif  // PLATE_ECHO_ORACLE_HPP
