#ifndef PLATE_ECHO_VERIFY_HPP
#define PLATE_ECHO_VERIFY_HPP

// Numerical checks of continuum identities on discrete data. The far-field
// operator (Fg)(xhat) = int u_inf(xhat, d) g(d) ds(d) is approximated by w F
// with the trapezoid weight w = 2 pi / N, inserted exactly once.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plate_echo/error.hpp"
#include "plate_echo/forward.hpp"
#include "plate_echo/geometry.hpp"
#include "plate_echo/imaging.hpp"
#include "plate_echo/specfun.hpp"

namespace plate_echo {

/// |trapezoid_N int_{S^1} exp(ik (x - z).d) ds(d) - 2 pi J_0(k |x - z|)|.
inline double check_funk_hecke(double k, const Point& x, const Point& z, int n) {
  if (n < 8) throw std::invalid_argument("check_funk_hecke: need N >= 8");
  const Point diff = x - z;
  cdouble sum = 0.0;
  for (const Point& d : uniform_directions(n)) sum += std::exp(cdouble(0.0, k * diff.dot(d)));
  const cdouble integral = sum * (2.0 * std::numbers::pi / n);
  return std::abs(integral - 2.0 * std::numbers::pi * specfun::bessel_j(0, k * diff.norm()));
}

struct IdentityResidualReport {
  double residual = 0.0;
  int n = 0;
  std::string shape;
  double k = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool degenerate = false;  // ||F|| = 0; residual undefined
};

/// r = ||(F - F^H) - (i / 4 pi) w F^H F||_F / ||F||_F.
inline IdentityResidualReport check_operator_identity(const FarFieldMatrix& f, double tolerance = 1e-2) {
  IdentityResidualReport report;
  report.n = f.size();
  report.shape = f.shape;
  report.k = f.k;
  report.tolerance = tolerance;
  const double scale = f.entries.norm();
  if (!(scale > 0.0)) {
    report.degenerate = true;
    report.residual = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const double w = 2.0 * std::numbers::pi / f.size();
  const Eigen::MatrixXcd fh = f.entries.adjoint();
  const Eigen::MatrixXcd defect = (f.entries - fh) - cdouble(0.0, w / (4.0 * std::numbers::pi)) * (fh * f.entries);
  report.residual = defect.norm() / scale;
  report.pass = report.residual <= tolerance;
  return report;
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more samples");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DegenerateError("loglog_slope: non-positive sample");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Slope of log(mean indicator on the circle |z - center| = r) against log r.
/// Resolving the oscillation of phi_z at radius r needs N well above 2 k r.
inline double check_decay_slope(const FarFieldMatrix& f, Indicator which, double rho, const std::vector<double>& radii,
                                int samples_per_radius, const Point& center = Point::Zero()) {
  if (radii.size() < 2) throw std::invalid_argument("check_decay_slope: need two or more radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw std::invalid_argument("check_decay_slope: radii must be positive and strictly increasing");
  if (samples_per_radius < 1) throw std::invalid_argument("check_decay_slope: need samples");
  std::vector<double> means(radii.size(), 0.0);
  parallel_for(radii.size(), [&](std::size_t r) {
    double sum = 0.0;
    for (int s = 0; s < samples_per_radius; ++s) {
      const double angle = 2.0 * std::numbers::pi * s / samples_per_radius;
      sum += indicator(f, center + radii[r] * Point(std::cos(angle), std::sin(angle)), rho, which);
    }
    means[r] = sum / samples_per_radius;
  });
  for (double m : means)
    if (!(m > 0.0)) throw DegenerateError("check_decay_slope: zero angular average");
  return loglog_slope(radii, means);
}

/// Slack of the two-sided bound
///   (1 / 8 pi) ||F_c phi||^2 <= |(phi, F_c phi)| <= sqrt(2 pi) ||F_c phi||
/// in L2(S^1) norms with F_c = w F; each side is read as a <= b (1 + eps).
struct ChainSlack {
  double lower = 0.0;
  double upper = 0.0;
  double worst() const { return std::max(lower, upper); }
};

inline double relative_excess(double a, double b) {
  if (a <= b) return 0.0;
  if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
  return a / b - 1.0;
}

inline ChainSlack equivalence_slack(const FarFieldMatrix& f, const Point& z) {
  const double w = 2.0 * std::numbers::pi / f.size();
  const Eigen::VectorXcd phi = phi_z(f.k, f.directions, z);
  const Eigen::VectorXcd fphi = f.entries * phi;
  const double ip = w * w * std::abs(phi.dot(fphi));
  const double norm_sq = w * w * w * fphi.squaredNorm();
  return {relative_excess(norm_sq / (8.0 * std::numbers::pi), ip),
          relative_excess(ip, std::sqrt(2.0 * std::numbers::pi * norm_sq))};
}

/// Largest eps needed over the sample points.
inline double check_equivalence_chain(const FarFieldMatrix& f, const std::vector<Point>& sample_points) {
  double worst = 0.0;
  for (const Point& z : sample_points) worst = std::max(worst, equivalence_slack(f, z).worst());
  return worst;
}

/// Jaccard index of {grid >= threshold} against the curve interior on the grid.
inline double reconstruction_overlap(const ImagingGrid& grid, const ParametricCurve& curve, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");
  std::size_t both = 0, either = 0, recon = 0, truth = 0;
  for (std::size_t p = 0; p < grid.values.size(); ++p) {
    const bool a = grid.values[p] >= threshold;
    const bool b = curve.contains(grid.point(p));
    recon += a;
    truth += b;
    both += a && b;
    either += a || b;
  }
  if (recon == 0) throw DegenerateError("reconstruction set is empty");
  if (truth == 0) throw DegenerateError("cavity covers no grid point");
  return static_cast<double>(both) / static_cast<double>(either);
}

/// Ranks 1..n with ties given their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t m = i; m <= j; ++m) ranks[order[m]] = rank;
    i = j + 1;
  }
  return ranks;
}

inline double spearman_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("spearman: need equal sizes >= 2");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw DegenerateError("spearman: constant input");
  return sab / std::sqrt(saa * sbb);
}

/// check=<name> shape=<kind> k=<k> N=<N> value=<v> tol=<t> pass=<0|1>
inline std::string format_record(const std::string& name, const std::string& shape, double k, int n, double value,
                                 double tol, bool pass) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "check=%s shape=%s k=%.17g N=%d value=%.6e tol=%.6e pass=%d", name.c_str(),
                shape.c_str(), k, n, value, tol, pass ? 1 : 0);
  return buf;
}

}  // namespace plate_echo

#endif  // PLATE_ECHO_VERIFY_HPP
