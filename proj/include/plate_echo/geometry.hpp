#ifndef PLATE_ECHO_GEOMETRY_HPP
#define PLATE_ECHO_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plate_echo/specfun.hpp"

namespace plate_echo {

enum class ShapeKind { circle, ellipse, peanut, star, kite };

inline std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::circle: return "circle";
    case ShapeKind::ellipse: return "ellipse";
    case ShapeKind::peanut: return "peanut";
    case ShapeKind::star: return "star";
    case ShapeKind::kite: return "kite";
  }
  return "unknown";
}

inline ShapeKind shape_kind_from_string(std::string_view name) {
  if (name == "circle") return ShapeKind::circle;
  if (name == "ellipse") return ShapeKind::ellipse;
  if (name == "peanut") return ShapeKind::peanut;
  if (name == "star") return ShapeKind::star;
  if (name == "kite") return ShapeKind::kite;
  throw std::invalid_argument("unknown shape kind '" + std::string(name) + "'");
}

/// Default parameter list per kind.
///   circle  {radius}
///   ellipse {semi_x, semi_y}
///   peanut  {scale}                       r = scale * 0.5 * sqrt(3 cos^2 t + 1)
///   star    {scale, amplitude, petals}    r = scale * (1 + amplitude * cos(petals t))
///   kite    {scale}                       scale * (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
inline std::vector<double> default_params(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::circle: return {1.0};
    case ShapeKind::ellipse: return {1.0, 0.5};
    case ShapeKind::peanut: return {1.5};
    case ShapeKind::star: return {1.5, 0.3, 4.0};
    case ShapeKind::kite: return {1.0};
  }
  return {};
}

/// Position, outward unit normal and |x'(t)| at one parameter value.
struct CurveFrame {
  Point position;
  Point normal;
  double jacobian;
};

/// Analytic closed curve x(t), t in [0, 2 pi), oriented counterclockwise so
/// that nu = (x2', -x1') / |x'| is the outward normal.
class ParametricCurve {
 public:
  ParametricCurve(ShapeKind kind, std::vector<double> params, Point center = Point::Zero())
      : kind_(kind), params_(std::move(params)), center_(center) {
    validate();
    polygon_.resize(kPolygonNodes);
    for (int j = 0; j < kPolygonNodes; ++j)
      polygon_[j] = position(2.0 * std::numbers::pi * j / kPolygonNodes);
  }

  ShapeKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const Point& center() const { return center_; }

  Point position(double t) const {
    Point p, v, a;
    evaluate(t, p, v, a);
    return p;
  }
  Point velocity(double t) const {
    Point p, v, a;
    evaluate(t, p, v, a);
    return v;
  }
  Point acceleration(double t) const {
    Point p, v, a;
    evaluate(t, p, v, a);
    return a;
  }

  /// Position, first and second derivative in one call.
  void evaluate(double t, Point& x, Point& dx, Point& ddx) const {
    const double c = std::cos(t), s = std::sin(t);
    if (kind_ == ShapeKind::ellipse) {
      const double a = params_[0], b = params_[1];
      x = Point(a * c, b * s);
      dx = Point(-a * s, b * c);
      ddx = Point(-a * c, -b * s);
    } else if (kind_ == ShapeKind::kite) {
      const double sc = params_[0];
      const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
      x = sc * Point(c + 0.65 * c2 - 0.65, 1.5 * s);
      dx = sc * Point(-s - 1.3 * s2, 1.5 * c);
      ddx = sc * Point(-c - 2.6 * c2, -1.5 * s);
    } else {
      double r, dr, ddr;
      radius(t, r, dr, ddr);
      const Point e(c, s), e_perp(-s, c);
      x = r * e;
      dx = dr * e + r * e_perp;
      ddx = (ddr - r) * e + 2.0 * dr * e_perp;
    }
    x += center_;
  }

  CurveFrame frame(double t) const {
    Point x, dx, ddx;
    evaluate(t, x, dx, ddx);
    const double jac = dx.norm();
    return {x, Point(dx.y(), -dx.x()) / jac, jac};
  }

  /// Strict interior test (polar for radial shapes, even-odd rule otherwise).
  bool contains(const Point& z) const {
    const Point q = z - center_;
    switch (kind_) {
      case ShapeKind::circle:
      case ShapeKind::peanut:
      case ShapeKind::star: {
        double r, dr, ddr;
        radius(std::atan2(q.y(), q.x()), r, dr, ddr);
        return q.norm() < r;
      }
      case ShapeKind::ellipse: {
        const double u = q.x() / params_[0], v = q.y() / params_[1];
        return u * u + v * v < 1.0;
      }
      case ShapeKind::kite: break;
    }
    const auto& poly = polygon();
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
      const Point& a = poly[i];
      const Point& b = poly[j];
      if ((a.y() > z.y()) != (b.y() > z.y())) {
        const double xc = a.x() + (z.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
        if (z.x() < xc) inside = !inside;
      }
    }
    return inside;
  }

  /// Euclidean distance from z to the closed region bounded by the curve.
  double distance_to_region(const Point& z) const {
    if (contains(z)) return 0.0;
    const auto& poly = polygon();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
      const Point ab = poly[i] - poly[j];
      const double u = std::clamp((z - poly[j]).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (poly[j] + u * ab - z).norm());
    }
    return best;
  }

  /// Area enclosed, by the trapezoid rule on the shoelace integrand
  /// (1/2) (x1 x2' - x2 x1'). Positive for counterclockwise orientation.
  double signed_area(int nodes = 256) const {
    double sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
      Point x, dx, ddx;
      evaluate(2.0 * std::numbers::pi * j / nodes, x, dx, ddx);
      sum += x.x() * dx.y() - x.y() * dx.x();
    }
    return 0.5 * sum * 2.0 * std::numbers::pi / nodes;
  }

  double arclength(int nodes = 256) const {
    double sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += velocity(2.0 * std::numbers::pi * j / nodes).norm();
    return sum * 2.0 * std::numbers::pi / nodes;
  }

  /// Centroid of the enclosed region (Green's theorem, trapezoid rule).
  Point centroid(int nodes = 512) const {
    double cx = 0.0, cy = 0.0;
    for (int j = 0; j < nodes; ++j) {
      Point x, dx, ddx;
      evaluate(2.0 * std::numbers::pi * j / nodes, x, dx, ddx);
      const double cross = x.x() * dx.y() - x.y() * dx.x();
      cx += x.x() * cross;
      cy += x.y() * cross;
    }
    const double area = signed_area(nodes);
    const double h = 2.0 * std::numbers::pi / nodes;
    return Point(cx, cy) * h / (3.0 * area);
  }

  /// Largest distance between two boundary points (sampled).
  double diameter(int nodes = 512) const {
    std::vector<Point> pts(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) pts[j] = position(2.0 * std::numbers::pi * j / nodes);
    double best = 0.0;
    for (const auto& a : pts)
      for (const auto& b : pts) best = std::max(best, (a - b).norm());
    return best;
  }

 private:
  static constexpr int kPolygonNodes = 4096;

  void radius(double t, double& r, double& dr, double& ddr) const {
    switch (kind_) {
      case ShapeKind::circle:
        r = params_[0];
        dr = ddr = 0.0;
        return;
      case ShapeKind::peanut: {
        const double sc = 0.5 * params_[0];
        const double c = std::cos(t);
        const double g = 3.0 * c * c + 1.0;
        const double dg = -3.0 * std::sin(2.0 * t);
        const double ddg = -6.0 * std::cos(2.0 * t);
        const double root = std::sqrt(g);
        r = sc * root;
        dr = sc * dg / (2.0 * root);
        ddr = sc * (ddg / (2.0 * root) - dg * dg / (4.0 * g * root));
        return;
      }
      case ShapeKind::star: {
        const double sc = params_[0], amp = params_[1], m = params_[2];
        r = sc * (1.0 + amp * std::cos(m * t));
        dr = -sc * amp * m * std::sin(m * t);
        ddr = -sc * amp * m * m * std::cos(m * t);
        return;
      }
      default:
        r = dr = ddr = 0.0;
    }
  }

  void validate() const {
    std::size_t expected = default_params(kind_).size();
    if (params_.size() != expected)
      throw std::invalid_argument(std::string(to_string(kind_)) + ": expected " +
                                  std::to_string(expected) + " parameters");
    for (double p : params_)
      if (!std::isfinite(p)) throw std::invalid_argument("non-finite curve parameter");
    switch (kind_) {
      case ShapeKind::circle:
      case ShapeKind::peanut:
      case ShapeKind::kite:
        if (params_[0] <= 0.0) throw std::invalid_argument("curve scale must be positive");
        break;
      case ShapeKind::ellipse:
        if (params_[0] <= 0.0 || params_[1] <= 0.0)
          throw std::invalid_argument("ellipse semi-axes must be positive");
        break;
      case ShapeKind::star:
        if (params_[0] <= 0.0) throw std::invalid_argument("star scale must be positive");
        if (std::abs(params_[1]) >= 1.0)
          throw std::invalid_argument("star amplitude must satisfy |amplitude| < 1");
        if (params_[2] < 1.0 || params_[2] != std::floor(params_[2]))
          throw std::invalid_argument("star petal count must be a positive integer");
        break;
    }
    // |x'(t)| > 0 on a fine sample; for radial shapes also r(t) > 0.
    for (int j = 0; j < 4096; ++j) {
      const double t = 2.0 * std::numbers::pi * j / 4096;
      Point x, dx, ddx;
      evaluate(t, x, dx, ddx);
      if (dx.norm() <= 1e-12) throw std::invalid_argument("curve parametrization is singular");
    }
  }

  const std::vector<Point>& polygon() const { return polygon_; }

  ShapeKind kind_;
  std::vector<double> params_;
  Point center_;
  std::vector<Point> polygon_;  // dense boundary sample for inside/distance queries
};

inline ParametricCurve make_curve(ShapeKind kind, std::vector<double> params, Point center = Point::Zero()) {
  return ParametricCurve(kind, std::move(params), center);
}

inline CurveFrame curve_frame(const ParametricCurve& curve, double t) { return curve.frame(t); }

}  // namespace plate_echo

#endif  // PLATE_ECHO_GEOMETRY_HPP
