#ifndef PLATE_ECHO_IMAGING_HPP
#define PLATE_ECHO_IMAGING_HPP

// Direct-sampling indicators on far-field data:
//   W_ip(z)   = |(phi_z, F phi_z)|^rho
//   W_norm(z) = ||F phi_z||^rho
// with phi_z = (exp(-ik z.d_1), ..., exp(-ik z.d_N)) and plain l2 sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "plate_echo/error.hpp"
#include "plate_echo/forward.hpp"
#include "plate_echo/parallel.hpp"

namespace plate_echo {

enum class Indicator { ip, norm };

inline std::string_view to_string(Indicator which) { return which == Indicator::ip ? "ip" : "norm"; }

inline Indicator indicator_from_string(std::string_view name) {
  if (name == "ip") return Indicator::ip;
  if (name == "norm") return Indicator::norm;
  throw std::invalid_argument("unknown indicator '" + std::string(name) + "' (expected ip or norm)");
}

/// Multiplicative noise F(i,j) (1 + delta R(i,j)); Re R and Im R independent
/// uniform on [-1, 1].
struct NoiseModel {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {
// 53 random bits mapped to [-1, 1); unlike std::uniform_real_distribution the
// sequence is fixed by the standard engine alone.
inline double symmetric_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
}
}  // namespace detail

/// Noise matrix R drawn row-major, real part before imaginary part.
inline Eigen::MatrixXcd noise_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Eigen::MatrixXcd r(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = detail::symmetric_unit(gen);
      const double im = detail::symmetric_unit(gen);
      r(i, j) = cdouble(re, im);
    }
  return r;
}

inline FarFieldMatrix add_noise(const FarFieldMatrix& f, const NoiseModel& model) {
  if (!(model.delta >= 0.0) || !(model.delta < 1.0)) throw std::invalid_argument("noise level must lie in [0, 1)");
  FarFieldMatrix out = f;
  if (model.delta == 0.0) return out;
  const Eigen::MatrixXcd r = noise_matrix(static_cast<int>(f.entries.rows()), static_cast<int>(f.entries.cols()),
                                          model.seed);
  out.entries = f.entries.cwiseProduct((Eigen::MatrixXcd::Ones(r.rows(), r.cols()) + model.delta * r));
  return out;
}

/// Receivers (rows) and sources (columns) to drop; 1-based indices.
struct ApertureMask {
  std::vector<int> receiver_rows_zeroed;
  std::vector<int> source_cols_zeroed;

  bool empty() const { return receiver_rows_zeroed.empty() && source_cols_zeroed.empty(); }
};

/// Receivers in the first quadrant and sources in the fourth quadrant
/// removed: rows 1..N/4 and columns 3N/4..N (rows 1-16, columns 48-64 at N = 64).
inline ApertureMask quadrant_aperture_mask(int n_dirs) {
  if (n_dirs < 4 || n_dirs % 4 != 0) throw std::invalid_argument("quadrant mask needs N divisible by 4");
  ApertureMask mask;
  for (int i = 1; i <= n_dirs / 4; ++i) mask.receiver_rows_zeroed.push_back(i);
  for (int j = 3 * n_dirs / 4; j <= n_dirs; ++j) mask.source_cols_zeroed.push_back(j);
  return mask;
}

inline FarFieldMatrix apply_mask(const FarFieldMatrix& f, const ApertureMask& mask) {
  const int rows = static_cast<int>(f.entries.rows());
  const int cols = static_cast<int>(f.entries.cols());
  for (int i : mask.receiver_rows_zeroed)
    if (i < 1 || i > rows) throw std::out_of_range("mask row " + std::to_string(i) + " outside 1.." + std::to_string(rows));
  for (int j : mask.source_cols_zeroed)
    if (j < 1 || j > cols) throw std::out_of_range("mask column " + std::to_string(j) + " outside 1.." + std::to_string(cols));
  FarFieldMatrix out = f;
  for (int i : mask.receiver_rows_zeroed) out.entries.row(i - 1).setZero();
  for (int j : mask.source_cols_zeroed) out.entries.col(j - 1).setZero();
  return out;
}

inline Eigen::VectorXcd phi_z(double k, const std::vector<Point>& directions, const Point& z) {
  Eigen::VectorXcd phi(static_cast<Eigen::Index>(directions.size()));
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double arg = -k * z.dot(directions[i]);
    phi[static_cast<Eigen::Index>(i)] = cdouble(std::cos(arg), std::sin(arg));
  }
  return phi;
}

/// (phi_z, F phi_z) with plain l2 sums.
inline cdouble inner_product_indicator(const FarFieldMatrix& f, const Point& z) {
  const Eigen::VectorXcd phi = phi_z(f.k, f.directions, z);
  return phi.dot(f.entries * phi);
}

inline double w_ip(const FarFieldMatrix& f, const Point& z, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  return std::pow(std::abs(inner_product_indicator(f, z)), rho);
}

inline double w_norm(const FarFieldMatrix& f, const Point& z, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  const Eigen::VectorXcd phi = phi_z(f.k, f.directions, z);
  return std::pow((f.entries * phi).squaredNorm(), 0.5 * rho);
}

inline double indicator(const FarFieldMatrix& f, const Point& z, double rho, Indicator which) {
  return which == Indicator::ip ? w_ip(f, z, rho) : w_norm(f, z, rho);
}

/// Rectangle [x_min, x_max] x [y_min, y_max] sampled at nx x ny points,
/// endpoints included.
struct GridSpec {
  double x_min = -4.0, x_max = 4.0;
  double y_min = -4.0, y_max = 4.0;
  int nx = 150, ny = 150;

  void validate() const {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid resolution must be at least 2 per axis");
    if (!(x_min < x_max) || !(y_min < y_max)) throw std::invalid_argument("grid extent must be increasing");
  }
  double x(int ix) const { return x_min + (x_max - x_min) * ix / (nx - 1); }
  double y(int iy) const { return y_min + (y_max - y_min) * iy / (ny - 1); }
  Point point(int ix, int iy) const { return Point(x(ix), y(iy)); }
};

/// values[iy * nx + ix] at spec.point(ix, iy).
struct ImagingGrid {
  GridSpec spec;
  std::vector<double> values;
  bool normalized = false;
  double raw_max = 0.0;  // maximum before normalization

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * spec.nx + ix]; }
  std::size_t argmax() const {
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  }
  Point point(std::size_t flat) const {
    return spec.point(static_cast<int>(flat % spec.nx), static_cast<int>(flat / spec.nx));
  }
};

/// Raw indicator values, row-major; each point is independent.
inline ImagingGrid evaluate_grid_raw(const FarFieldMatrix& f, const GridSpec& spec, double rho, Indicator which) {
  spec.validate();
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  ImagingGrid grid;
  grid.spec = spec;
  grid.values.assign(static_cast<std::size_t>(spec.nx) * spec.ny, 0.0);
  parallel_for(static_cast<std::size_t>(spec.ny), [&](std::size_t iy) {
    for (int ix = 0; ix < spec.nx; ++ix)
      grid.values[iy * spec.nx + ix] = indicator(f, spec.point(ix, static_cast<int>(iy)), rho, which);
  });
  return grid;
}

/// Divides by the maximum; DegenerateError when every value is zero.
inline void normalize(ImagingGrid& grid) {
  double top = 0.0;
  for (double v : grid.values) {
    if (!std::isfinite(v)) throw DegenerateError("imaging grid contains non-finite values");
    top = std::max(top, v);
  }
  if (!(top > 0.0)) throw DegenerateError("imaging grid is identically zero");
  for (double& v : grid.values) v /= top;
  grid.raw_max = top;
  grid.normalized = true;
}

inline ImagingGrid evaluate_grid(const FarFieldMatrix& f, const GridSpec& spec, double rho, Indicator which) {
  ImagingGrid grid = evaluate_grid_raw(f, spec, rho, which);
  normalize(grid);
  return grid;
}

}  // namespace plate_echo

#endif  // PLATE_ECHO_IMAGING_HPP
