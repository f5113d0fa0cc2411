#ifndef PLATE_ECHO_SPECFUN_HPP
#define PLATE_ECHO_SPECFUN_HPP

// Cylinder functions J_n, Y_n, K_n, I_n for integer order and real argument,
// plus the free-space kernels of the Helmholtz and modified Helmholtz
// operators in the plane.
//
// Evaluation strategy:
//   J_n   power series for t < 1, Miller backward recurrence normalized by
//         J_0 + 2 sum J_2k = 1, forward recurrence from the Hankel asymptotic
//         expansion when t > 25 and the requested orders stay below t.
//   Y_0,1 Neumann series built from the Miller sequence for t <= 25, Hankel
//         asymptotic expansion beyond; higher orders by upward recurrence.
//   K_0,1 ascending series for t <= 2, Steed/Temme continued fraction beyond;
//         higher orders by upward recurrence.
//
// Derivatives use the standard identity f_n' = (f_{n-1} - f_{n+1}) / 2 for
// f in {J, Y, H^(1)} (minus sign; a plus sign is a common misprint), and
// K_n' = -(K_{n-1} + K_{n+1}) / 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace plate_echo {

using Point = Eigen::Vector2d;
using cdouble = std::complex<double>;

namespace specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Value and first derivative of a cylinder function of integer order.
struct CylinderFunctionValue {
  int order = 0;
  double argument = 0.0;
  cdouble value;
  cdouble derivative;
};

namespace detail {

inline constexpr double kAsymptoticThreshold = 25.0;

// Hankel's asymptotic expansion for J_nu, Y_nu with nu in {0, 1}.
inline void hankel_asymptotic(int nu, double t, double& j, double& y) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double a = 1.0;  // a_k(nu) / t^k
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k * t);
    if (std::abs(a) > last) break;  // expansion started to diverge
    last = std::abs(a);
    // k = 1, 2, 3, 4 -> Q +, P -, Q -, P +
    const int phase = k % 4;
    if (phase == 1) q += a;
    else if (phase == 2) p -= a;
    else if (phase == 3) q -= a;
    else p += a;
    if (last < 1e-17 * std::abs(p)) break;
  }
  const double chi = t - (0.5 * nu + 0.25) * std::numbers::pi;
  const double amp = std::sqrt(2.0 / (std::numbers::pi * t));
  const double c = std::cos(chi), s = std::sin(chi);
  j = amp * (p * c - q * s);
  y = amp * (p * s + q * c);
}

inline int miller_start(int nmax, double t) {
  const double top = std::max(static_cast<double>(nmax), t);
  int m = static_cast<int>(std::ceil(top + 20.0 + 16.0 * std::cbrt(std::max(t, 1.0))));
  return m + (m & 1);
}

// Fills j[0..nmax] by Miller's algorithm; optionally returns Y_0, Y_1 from
// the Neumann series that reuse the same (normalized) sequence.
inline void miller_jy(int nmax, double t, std::span<double> j, double* y0, double* y1) {
  const int m = miller_start(std::max(nmax, 2), t);
  std::vector<double> f(static_cast<std::size_t>(m) + 2, 0.0);
  f[static_cast<std::size_t>(m)] = 1e-30;
  for (int n = m; n >= 1; --n) {
    f[n - 1] = (2.0 * n / t) * f[n] - f[n + 1];
    if (std::abs(f[n - 1]) > 1e250) {
      for (int i = n - 1; i <= m; ++i) f[i] *= 1e-250;
    }
  }
  double norm = f[0];
  for (int k = 2; k <= m; k += 2) norm += 2.0 * f[k];
  for (auto& v : f) v /= norm;
  for (int n = 0; n <= nmax; ++n) j[n] = f[n];
  if (y0 == nullptr) return;

  double s0 = 0.0, s1 = 0.0;
  for (int k = 1; 2 * k + 1 <= m + 1; ++k) {
    const double sign = (k & 1) ? -1.0 : 1.0;
    s0 += sign * f[2 * k] / k;
    s1 += sign * (f[2 * k - 1] - f[2 * k + 1]) / k;
  }
  const double lg = std::log(0.5 * t) + kEulerGamma;
  const double inv_pi = std::numbers::inv_pi;
  *y0 = 2.0 * inv_pi * lg * f[0] - 4.0 * inv_pi * s0;
  *y1 = 2.0 * inv_pi * lg * f[1] - 2.0 * inv_pi * f[0] / t + 2.0 * inv_pi * s1;
}

inline double j_series(int n, double t) {
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  const double half = 0.5 * t;
  const double q = -half * half;
  double term = std::exp(n * std::log(half) - std::lgamma(n + 1.0));
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (k * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Ascending series for K_0 and K_1, accurate for 0 < t <= 2.
inline void k01_series(double t, double& k0, double& k1) {
  const double q = 0.25 * t * t;
  const double lg = std::log(0.5 * t);
  // I_0, I_1 and the harmonic/digamma sums in one pass.
  double i0 = 1.0, i1 = 0.5 * t;
  double term0 = 1.0;         // q^k / (k!)^2
  double term1 = 0.5 * t;     // (t/2) q^k / (k! (k+1)!)
  double harmonic = 0.0;      // H_k
  double psi_k1 = -kEulerGamma;            // psi(k+1)
  double psi_k2 = 1.0 - kEulerGamma;       // psi(k+2)
  double sum0 = 0.0;
  double sum1 = psi_k1 + psi_k2;  // k = 0 term of the K_1 tail
  for (int k = 1; k < 40; ++k) {
    term0 *= q / (static_cast<double>(k) * k);
    term1 *= q / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    psi_k1 += 1.0 / k;
    psi_k2 += 1.0 / (k + 1);
    i0 += term0;
    i1 += term1;
    sum0 += harmonic * term0;
    sum1 += (psi_k1 + psi_k2) * term1 / (0.5 * t);
    if (term0 < 1e-18 * i0) break;
  }
  k0 = -(lg + kEulerGamma) * i0 + sum0;
  k1 = 1.0 / t + lg * i1 - 0.25 * t * sum1;
}

// Steed's continued fraction (Temme's CF2) for K_0 and K_1, t > 2.
inline void k01_continued_fraction(double t, double& k0, double& k1) {
  double b = 2.0 * (1.0 + t);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  h = a1 * h;
  k0 = std::sqrt(std::numbers::pi / (2.0 * t)) * std::exp(-t) / s;
  k1 = k0 * (t + 0.5 - h) / t;
}

inline int reflect_sign(int n) { return (n < 0 && (n & 1)) ? -1 : 1; }

}  // namespace detail

/// J_0(t) .. J_nmax(t) and, when y is non-empty, Y_0(t) .. Y_nmax(t).
inline void bessel_jy_table(int nmax, double t, std::span<double> j, std::span<double> y = {}) {
  if (nmax < 0) throw std::invalid_argument("bessel_jy_table: negative order");
  if (t < 0.0) throw std::domain_error("bessel_jy_table: negative argument");
  const bool want_y = !y.empty();
  if (want_y && t <= 0.0) throw std::domain_error("bessel_y: argument must be positive");

  double y0 = 0.0, y1 = 0.0;
  if (t > detail::kAsymptoticThreshold) {
    double j0, j1;
    detail::hankel_asymptotic(0, t, j0, y0);
    detail::hankel_asymptotic(1, t, j1, y1);
    if (nmax < t) {
      j[0] = j0;
      if (nmax >= 1) j[1] = j1;
      for (int n = 1; n < nmax; ++n) j[n + 1] = (2.0 * n / t) * j[n] - j[n - 1];
    } else {
      detail::miller_jy(nmax, t, j, nullptr, nullptr);
    }
  } else if (t < 1.0 && !want_y) {
    for (int n = 0; n <= nmax; ++n) j[n] = detail::j_series(n, t);
  } else {
    detail::miller_jy(nmax, t, j, want_y ? &y0 : nullptr, &y1);
    if (t < 1.0) {
      for (int n = 0; n <= nmax; ++n) j[n] = detail::j_series(n, t);
    }
  }
  if (!want_y) return;
  y[0] = y0;
  if (nmax >= 1) y[1] = y1;
  for (int n = 1; n < nmax; ++n) y[n + 1] = (2.0 * n / t) * y[n] - y[n - 1];
}

/// K_0(t) .. K_nmax(t); zero where exp(-t) underflows.
inline void bessel_k_table(int nmax, double t, std::span<double> k) {
  if (t <= 0.0) throw std::domain_error("bessel_k: argument must be positive");
  double k0, k1;
  if (t <= 2.0) detail::k01_series(t, k0, k1);
  else detail::k01_continued_fraction(t, k0, k1);
  k[0] = k0;
  if (nmax >= 1) k[1] = k1;
  for (int n = 1; n < nmax; ++n) k[n + 1] = k[n - 1] + (2.0 * n / t) * k[n];
}

inline double bessel_j(int n, double t) {
  const int an = std::abs(n);
  double sign = detail::reflect_sign(n);
  if (t < 0.0) {
    t = -t;
    if (an & 1) sign = -sign;
  }
  std::vector<double> j(static_cast<std::size_t>(an) + 1);
  bessel_jy_table(an, t, j);
  return sign * j[an];
}

inline double bessel_y(int n, double t) {
  if (t <= 0.0) throw std::domain_error("bessel_y: argument must be positive");
  const int an = std::abs(n);
  std::vector<double> j(static_cast<std::size_t>(an) + 2), y(static_cast<std::size_t>(an) + 2);
  bessel_jy_table(an + 1, t, j, y);
  return detail::reflect_sign(n) * y[an];
}

inline double bessel_k(int n, double t) {
  if (t <= 0.0) throw std::domain_error("bessel_k: argument must be positive");
  const int an = std::abs(n);
  std::vector<double> k(static_cast<std::size_t>(an) + 2);
  bessel_k_table(an + 1, t, k);
  return k[an];
}

/// Modified Bessel function of the first kind by its ascending series
/// (all terms positive); intended for moderate arguments t <= 50.
inline double bessel_i(int n, double t) {
  n = std::abs(n);
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  const double half = 0.5 * t;
  const double q = half * half;
  double term = std::exp(n * std::log(std::abs(half)) - std::lgamma(n + 1.0));
  if (t < 0.0 && (n & 1)) term = -term;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline cdouble hankel1(int n, double t) { return {bessel_j(n, t), bessel_y(n, t)}; }

/// H_n^(1)(t) with its derivative.
inline CylinderFunctionValue hankel1_value(int n, double t) {
  const cdouble hm = hankel1(n - 1, t);
  const cdouble hp = hankel1(n + 1, t);
  return {n, t, hankel1(n, t), 0.5 * (hm - hp)};
}

inline CylinderFunctionValue bessel_j_value(int n, double t) {
  return {n, t, bessel_j(n, t), 0.5 * (bessel_j(n - 1, t) - bessel_j(n + 1, t))};
}

inline CylinderFunctionValue bessel_y_value(int n, double t) {
  return {n, t, bessel_y(n, t), 0.5 * (bessel_y(n - 1, t) - bessel_y(n + 1, t))};
}

inline CylinderFunctionValue bessel_k_value(int n, double t) {
  return {n, t, bessel_k(n, t), -0.5 * (bessel_k(n - 1, t) + bessel_k(n + 1, t))};
}

enum class KernelKind { helmholtz, modified };

/// Free-space kernel: (i/4) H_0^(1)(k|x-y|) for Helmholtz, K_0(k|x-y|)/(2 pi)
/// for the modified Helmholtz operator. The latter equals (i/4) H_0^(1)(ik|x-y|).
inline cdouble fundamental_solution(KernelKind kind, double k, const Point& x, const Point& y) {
  const double r = (x - y).norm();
  if (r == 0.0) throw std::domain_error("fundamental_solution: coincident points");
  const double kr = k * r;
  if (kind == KernelKind::helmholtz) {
    double j[2], yv[2];
    bessel_jy_table(1, kr, j, yv);
    return cdouble(0.0, 0.25) * cdouble(j[0], yv[0]);
  }
  double kv[2];
  bessel_k_table(1, kr, kv);
  return {0.5 * std::numbers::inv_pi * kv[0], 0.0};
}

}  // namespace specfun
}  // namespace plate_echo

#endif  // PLATE_ECHO_SPECFUN_HPP
