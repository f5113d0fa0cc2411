#ifndef PLATE_ECHO_FORWARD_HPP
#define PLATE_ECHO_FORWARD_HPP

// Clamped-cavity scattering of plate (biharmonic) waves.
//
// The scattered field is sought as u = DL_k[phi1] + SL_ik[phi2]: a Helmholtz
// double-layer potential plus a modified-Helmholtz single-layer potential.
// The two clamped conditions give the 2x2 block system
//
//   [ K_k + I    S_ik      ] [phi1]        [ u_inc        ]
//   [ T_k        K'_ik - I ] [phi2]  = -2  [ d_nu u_inc   ]
//
// with operators carrying the factor 2 (S phi = 2 int Phi phi ds, ...).
// Every kernel is split as A(t,tau) ln(4 sin^2((t-tau)/2)) + B(t,tau) and
// integrated with the log weights of nystrom.hpp. The hypersingular T_k is
// rewritten as
//
//   T_k phi = d/ds S_k (d phi/ds) + k^2 nu . S_k(nu phi),
//
// and the two tangential derivatives act through Fourier differentiation.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plate_echo/error.hpp"
#include "plate_echo/geometry.hpp"
#include "plate_echo/nystrom.hpp"
#include "plate_echo/parallel.hpp"
#include "plate_echo/specfun.hpp"

namespace plate_echo {

/// Curve sampled at 2n equispaced parameter nodes t_j = offset + j pi / n.
struct BoundaryDiscretization {
  ParametricCurve curve;
  int n_nodes = 0;
  double offset = 0.0;
  std::vector<double> t;
  std::vector<Point> x;        // x(t_j)
  std::vector<Point> dx;       // x'(t_j)
  std::vector<Point> ddx;      // x''(t_j)
  std::vector<Point> nvec;     // (x2', -x1'), outward, |nvec| = |x'|
  std::vector<double> jac;     // |x'(t_j)|

  Point unit_normal(int j) const { return nvec[j] / jac[j]; }
};

inline BoundaryDiscretization discretize(const ParametricCurve& curve, int n_nodes, double offset = 0.0) {
  nystrom::require_even(n_nodes);
  BoundaryDiscretization disc{curve, n_nodes, offset, {}, {}, {}, {}, {}, {}};
  const std::size_t count = static_cast<std::size_t>(n_nodes);
  disc.t.resize(count);
  disc.x.resize(count);
  disc.dx.resize(count);
  disc.ddx.resize(count);
  disc.nvec.resize(count);
  disc.jac.resize(count);
  for (int j = 0; j < n_nodes; ++j) {
    disc.t[j] = offset + 2.0 * std::numbers::pi * j / n_nodes;
    curve.evaluate(disc.t[j], disc.x[j], disc.dx[j], disc.ddx[j]);
    disc.nvec[j] = Point(disc.dx[j].y(), -disc.dx[j].x());
    disc.jac[j] = disc.dx[j].norm();
  }
  return disc;
}

/// Boundary densities at the nodes for one incident direction.
struct DensityPair {
  Eigen::VectorXcd phi1;
  Eigen::VectorXcd phi2;
  Point direction = Point(1.0, 0.0);
};

/// Multi-static far-field data: entries(i, j) = u_inf(xhat_i, d_j) with
/// xhat_i = d_i = (cos theta_i, sin theta_i), theta_i = 2 pi i / N (0-based).
struct FarFieldMatrix {
  double k = 0.0;
  std::string shape = "unknown";
  std::vector<Point> directions;
  Eigen::MatrixXcd entries;

  int size() const { return static_cast<int>(directions.size()); }
};

inline std::vector<Point> uniform_directions(int count) {
  std::vector<Point> dirs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / count;
    dirs[i] = Point(std::cos(theta), std::sin(theta));
  }
  return dirs;
}

namespace detail {

// Nystrom matrices of the five kernels entering the block system, each already
// combined as R(|i-j|) A_ij + (pi/n) B_ij.
struct OperatorBlocks {
  Eigen::MatrixXcd double_layer;       // K_k
  Eigen::MatrixXcd single_plain;       // S_k without the |x'(tau)| factor
  Eigen::MatrixXcd single_normals;     // kernel of nu_x . S_k(nu_y .)
  Eigen::MatrixXd single_modified;     // S_ik
  Eigen::MatrixXd adjoint_modified;    // K'_ik
};

// Log-split Nystrom entry R * A + (pi/n) * (B - A * ln(4 sin^2)). For the
// modified-Helmholtz kernels A grows like I_0(kr) away from the diagonal and
// the two terms cancel to the size of K_0(kr), so this combination runs in
// extended precision.
inline double split_entry(long double log_part, long double full, long double rw, long double trap,
                          long double logw) {
  return static_cast<double>(log_part * (rw - trap * logw) + trap * full);
}

inline OperatorBlocks assemble_blocks(const BoundaryDiscretization& disc, double k) {
  const int size = disc.n_nodes;
  const int n = size / 2;
  const double trap = std::numbers::pi / n;
  const long double trap_ext = std::numbers::pi_v<long double> / n;
  const auto weights = nystrom::log_weights<long double>(size);
  const double inv_pi = std::numbers::inv_pi;
  const double inv_2pi = 0.5 * inv_pi;
  const double gamma = specfun::kEulerGamma;
  const cdouble i_unit(0.0, 1.0);

  OperatorBlocks blocks{Eigen::MatrixXcd(size, size), Eigen::MatrixXcd(size, size),
                        Eigen::MatrixXcd(size, size), Eigen::MatrixXd(size, size),
                        Eigen::MatrixXd(size, size)};

  parallel_for(static_cast<std::size_t>(size), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    const Point& xi = disc.x[i];
    const Point& ni = disc.nvec[i];
    const double jac_i = disc.jac[i];
    for (int j = 0; j < size; ++j) {
      const long double rw_ext = nystrom::log_weight(weights, i - j);
      const double rw = static_cast<double>(rw_ext);
      if (i == j) {
        const double curvature_term = inv_2pi * ni.dot(disc.ddx[i]) / (jac_i * jac_i);
        const double log_k = std::log(0.5 * k * jac_i);
        const cdouble plain_smooth = 0.5 * i_unit - gamma * inv_pi - inv_pi * log_k;
        blocks.double_layer(i, j) = trap * curvature_term;
        blocks.single_plain(i, j) = rw * (-inv_2pi) + trap * plain_smooth;
        blocks.single_normals(i, j) = rw * (-inv_2pi * jac_i) + trap * plain_smooth * jac_i;
        blocks.single_modified(i, j) = rw * (-inv_2pi * jac_i) + trap * (-inv_pi * jac_i * (gamma + log_k));
        blocks.adjoint_modified(i, j) = trap * curvature_term;
        continue;
      }
      const Point diff = xi - disc.x[j];
      const double r = diff.norm();
      if (!(r > 0.0)) throw SolverError("boundary nodes coincide; degenerate curve");
      const double kr = k * r;
      const long double s_ext = std::sin(0.5L * (static_cast<long double>(disc.t[i]) - disc.t[j]));
      const long double logw_ext = std::log(4.0L * s_ext * s_ext);
      const double logw = static_cast<double>(logw_ext);

      double jv[2], yv[2], kv[2];
      specfun::bessel_jy_table(1, kr, jv, yv);
      specfun::bessel_k_table(1, kr, kv);
      const double i0 = specfun::bessel_i(0, kr);
      const double i1 = specfun::bessel_i(1, kr);
      const cdouble h0(jv[0], yv[0]);
      const cdouble h1(jv[1], yv[1]);

      // K_k: (ik/2) n_j.(x_i - x_j) H_1(kr) / r
      const double nj_diff = disc.nvec[j].dot(diff);
      const cdouble dl = 0.5 * i_unit * k * nj_diff * h1 / r;
      const double dl_log = -k * inv_2pi * nj_diff * jv[1] / r;
      blocks.double_layer(i, j) = rw * dl_log + trap * (dl - dl_log * logw);

      // 2 Phi_k without Jacobian: (i/2) H_0(kr)
      const cdouble sp = 0.5 * i_unit * h0;
      const double sp_log = -inv_2pi * jv[0];
      blocks.single_plain(i, j) = rw * sp_log + trap * (sp - sp_log * logw);

      const double nn = ni.dot(disc.nvec[j]) / jac_i;
      blocks.single_normals(i, j) = rw * (sp_log * nn) + trap * (sp - sp_log * logw) * nn;

      // S_ik: (1/pi) K_0(kr) |x'_j|
      const long double jac_j = disc.jac[j];
      const long double sm = inv_pi * static_cast<long double>(kv[0]) * jac_j;
      const long double sm_log = -inv_2pi * static_cast<long double>(i0) * jac_j;
      blocks.single_modified(i, j) = split_entry(sm_log, sm, rw_ext, trap_ext, logw_ext);

      // K'_ik: -(k/pi) K_1(kr) n_i.(x_i - x_j) / r * |x'_j| / |x'_i|
      const long double ni_diff = static_cast<long double>(ni.dot(diff)) / r * jac_j / jac_i;
      const long double am = -k * inv_pi * static_cast<long double>(kv[1]) * ni_diff;
      const long double am_log = -k * inv_2pi * static_cast<long double>(i1) * ni_diff;
      blocks.adjoint_modified(i, j) = split_entry(am_log, am, rw_ext, trap_ext, logw_ext);
    }
  });
  return blocks;
}

}  // namespace detail

/// Nystrom matrix of the block operator [[K_k + I, S_ik], [T_k, K'_ik - I]],
/// size 2 n_nodes. Unknown ordering: (phi1 at all nodes, phi2 at all nodes).
inline Eigen::MatrixXcd assemble_system(const BoundaryDiscretization& disc, double k) {
  if (disc.n_nodes < 16) throw std::invalid_argument("assemble_system: need at least 16 nodes");
  if (!(k > 0.0)) throw std::invalid_argument("assemble_system: wavenumber must be positive");
  const int size = disc.n_nodes;
  const auto blocks = detail::assemble_blocks(disc, k);
  const Eigen::MatrixXd diff = nystrom::fourier_differentiation(size);
  const Eigen::VectorXd inv_jac =
      Eigen::Map<const Eigen::VectorXd>(disc.jac.data(), size).cwiseInverse();

  const Eigen::MatrixXcd diff_c = diff.cast<cdouble>();
  Eigen::MatrixXcd hyper = inv_jac.asDiagonal() * (diff_c * blocks.single_plain * diff_c);
  hyper += (k * k) * blocks.single_normals;

  Eigen::MatrixXcd q(2 * size, 2 * size);
  const auto identity = Eigen::MatrixXcd::Identity(size, size);
  q.topLeftCorner(size, size) = blocks.double_layer + identity;
  q.topRightCorner(size, size) = blocks.single_modified.cast<cdouble>();
  q.bottomLeftCorner(size, size) = hyper;
  q.bottomRightCorner(size, size) = blocks.adjoint_modified.cast<cdouble>() - identity;
  return q;
}

/// Assembled and LU-factorized block system; one factorization serves every
/// incident direction.
class BoundarySystem {
 public:
  BoundarySystem(const BoundaryDiscretization& disc, double k)
      : k_(k), n_nodes_(disc.n_nodes), matrix_(assemble_system(disc, k)), lu_(matrix_) {
    if (!matrix_.allFinite()) throw SolverError("system matrix has non-finite entries");
    const double rcond = lu_.rcond();
    if (!(rcond > 1e-14)) throw SolverError("system matrix is numerically singular (rcond " +
                                            std::to_string(rcond) + ")");
  }

  double k() const { return k_; }
  int n_nodes() const { return n_nodes_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// Solves Q X = B column by column; throws if the relative residual of any
  /// column exceeds 1e-10.
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const {
    Eigen::MatrixXcd sol = lu_.solve(rhs);
    const Eigen::MatrixXcd res = matrix_ * sol - rhs;
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
      const double scale = rhs.col(c).norm();
      if (scale > 0.0 && !(res.col(c).norm() <= 1e-10 * scale))
        throw SolverError("linear solve residual above 1e-10");
    }
    return sol;
  }

 private:
  double k_;
  int n_nodes_;
  Eigen::MatrixXcd matrix_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

/// Right-hand side -2 (u_inc, d_nu u_inc) at the nodes for u_inc = exp(ik x.d).
inline Eigen::VectorXcd incident_rhs(const BoundaryDiscretization& disc, double k, const Point& d) {
  const int size = disc.n_nodes;
  Eigen::VectorXcd rhs(2 * size);
  for (int j = 0; j < size; ++j) {
    const cdouble u = std::exp(cdouble(0.0, k * disc.x[j].dot(d)));
    rhs[j] = -2.0 * u;
    rhs[size + j] = -2.0 * cdouble(0.0, k * disc.unit_normal(j).dot(d)) * u;
  }
  return rhs;
}

inline DensityPair split_densities(const Eigen::VectorXcd& stacked, const Point& d) {
  const Eigen::Index size = stacked.size() / 2;
  return {stacked.head(size), stacked.tail(size), d};
}

inline DensityPair solve_densities(const BoundarySystem& system, const BoundaryDiscretization& disc,
                                   double k, const Point& d) {
  if (system.n_nodes() != disc.n_nodes || system.k() != k)
    throw std::invalid_argument("solve_densities: system assembled for another discretization");
  return split_densities(system.solve(incident_rhs(disc, k, d)), d);
}

/// u_inf(xhat) = -ik int nu(y).xhat exp(-ik xhat.y) phi1(y) ds(y) by the
/// trapezoid rule. phi2 does not enter: the modified-Helmholtz part decays
/// exponentially and leaves no far-field trace.
inline cdouble far_field(const BoundaryDiscretization& disc, double k, const DensityPair& density,
                         const Point& xhat) {
  const double trap = 2.0 * std::numbers::pi / disc.n_nodes;
  cdouble sum = 0.0;
  for (int j = 0; j < disc.n_nodes; ++j)
    sum += disc.nvec[j].dot(xhat) * std::exp(cdouble(0.0, -k * xhat.dot(disc.x[j]))) * density.phi1[j];
  return cdouble(0.0, -k) * trap * sum;
}

/// Far-field evaluation matrix E with E(i, j) = weight of phi1 at node j in
/// u_inf(xhat_i).
inline Eigen::MatrixXcd far_field_operator(const BoundaryDiscretization& disc, double k,
                                           const std::vector<Point>& xhats) {
  const double trap = 2.0 * std::numbers::pi / disc.n_nodes;
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(xhats.size()), disc.n_nodes);
  for (std::size_t i = 0; i < xhats.size(); ++i)
    for (int j = 0; j < disc.n_nodes; ++j)
      e(static_cast<Eigen::Index>(i), j) = cdouble(0.0, -k) * trap * disc.nvec[j].dot(xhats[i]) *
                                           std::exp(cdouble(0.0, -k * xhats[i].dot(disc.x[j])));
  return e;
}

/// Full multi-static matrix for N uniformly spaced directions.
inline FarFieldMatrix assemble_far_field_matrix(const ParametricCurve& curve, double k, int n_dirs,
                                                int n_nodes, double offset = 0.0) {
  if (n_dirs < 4) throw std::invalid_argument("need at least 4 directions");
  const auto disc = discretize(curve, n_nodes, offset);
  const BoundarySystem system(disc, k);
  const auto dirs = uniform_directions(n_dirs);
  Eigen::MatrixXcd rhs(2 * n_nodes, n_dirs);
  for (int j = 0; j < n_dirs; ++j) rhs.col(j) = incident_rhs(disc, k, dirs[j]);
  const Eigen::MatrixXcd sol = system.solve(rhs);
  FarFieldMatrix f;
  f.k = k;
  f.shape = std::string(to_string(curve.kind()));
  f.directions = dirs;
  f.entries = far_field_operator(disc, k, dirs) * sol.topRows(n_nodes);
  if (!f.entries.allFinite()) throw SolverError("far-field matrix has non-finite entries");
  return f;
}

}  // namespace plate_echo

#endif  // PLATE_ECHO_FORWARD_HPP
