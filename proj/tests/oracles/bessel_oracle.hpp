#ifndef PLATE_ECHO_TESTS_BESSEL_ORACLE_HPP
#define PLATE_ECHO_TESTS_BESSEL_ORACLE_HPP

// Reference values computed independently of specfun.hpp:
//   J_n, Y_n, I_n  ascending and Neumann series in multiprecision floating point
//   K_n            trapezoid rule on K_n(t) = int_0^inf exp(-t cosh s) cosh(ns) ds
//   j_{0,1}        bisection on the multiprecision J_0 series

#include <cmath>
#include <functional>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

namespace mp = boost::multiprecision;

// 400 decimal digits: the J series at t = 1000 has terms near 1e434 that
// cancel to O(1), so that range uses the wider type below.
using Wide = mp::number<mp::cpp_bin_float<120>>;
using Huge = mp::number<mp::cpp_bin_float<480>>;

template <class Real>
Real j_series(int n, const Real& t) {
  const Real q = -(t * t) / 4;
  Real term = 1;
  for (int m = 1; m <= n; ++m) term *= t / (2 * m);
  Real sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (k * (k + n));
    sum += term;
    if (k > t && abs(term) < abs(sum) * Real(1e-40) && abs(term) < Real(1e-60)) break;
  }
  return sum;
}

inline double bessel_j(int n, double t) {
  if (t > 90.0) return static_cast<double>(j_series<Huge>(n, Huge(t)));
  return static_cast<double>(j_series<Wide>(n, Wide(t)));
}

/// Neumann series:
///   pi Y_n = 2 J_n ln(t/2) - sum_{k<n} (n-k-1)!/k! (t/2)^{2k-n}
///            - sum_k [psi(k+1) + psi(n+k+1)] (-t^2/4)^k / (k! (n+k)!) (t/2)^n
inline double bessel_y(int n, double t) {
  using R = Wide;
  const R x(t);
  const R half = x / 2;
  const R pi = boost::math::constants::pi<R>();
  const R gamma = boost::math::constants::euler<R>();
  R finite = 0;
  for (int k = 0; k < n; ++k) {
    R c = 1;
    for (int m = 1; m <= n - k - 1; ++m) c *= m;
    for (int m = 1; m <= k; ++m) c /= m;
    finite += c * pow(half, 2 * k - n);
  }
  // harmonic numbers H_k and H_{n+k}; psi(m + 1) = -gamma + H_m
  R hk = 0, hnk = 0;
  for (int m = 1; m <= n; ++m) hnk += R(1) / m;
  R term = pow(half, n);
  for (int m = 1; m <= n; ++m) term /= m;
  const R q = -(x * x) / 4;
  R tail = 0;
  for (int k = 0; k < 100000; ++k) {
    if (k > 0) {
      hk += R(1) / k;
      hnk += R(1) / (n + k);
      term *= q / (k * (n + k));
    }
    const R add = (hk + hnk - 2 * gamma) * term;
    tail += add;
    if (k > x && abs(add) < R(1e-60)) break;
  }
  const R y = (2 * j_series<R>(n, x) * log(half) - finite - tail) / pi;
  return static_cast<double>(y);
}

inline double bessel_i(int n, double t) {
  using R = Wide;
  const R x(t);
  const R q = (x * x) / 4;
  R term = 1;
  for (int m = 1; m <= n; ++m) term *= x / (2 * m);
  R sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (k * (k + n));
    sum += term;
    if (term < sum * R(1e-40)) break;
  }
  return static_cast<double>(sum);
}

/// Trapezoid rule in long double; the integrand is entire and decays
/// double exponentially, so a fixed small step is spectrally accurate.
inline double bessel_k(int n, double t) {
  const long double x = t;
  const long double h = 1.0L / 64;
  long double sum = 0.5L * std::exp(-x);
  for (int m = 1;; ++m) {
    const long double s = m * h;
    const long double exponent = -x * std::cosh(s) + n * s;
    const long double term = std::exp(exponent) * 0.5L * (1.0L + std::exp(-2.0L * n * s));
    sum += term;
    if (exponent < std::log(std::abs(sum)) - 50.0L) break;
  }
  return static_cast<double>(sum * h);
}

/// Root of f in [a, b] by bisection, f(a) f(b) < 0.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 0.0; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline double first_j0_zero() {
  return bisect([](double t) { return static_cast<double>(j_series<Wide>(0, Wide(t))); }, 2.0, 3.0);
}

}  // namespace oracle

#endif  // PLATE_ECHO_TESTS_BESSEL_ORACLE_HPP
