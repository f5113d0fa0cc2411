#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles/bessel_oracle.hpp"
#include "plate_echo/cli.hpp"
#include "plate_echo/forward.hpp"
#include "plate_echo/oracle.hpp"
#include "plate_echo/verify.hpp"

using namespace plate_echo;

namespace {

const FarFieldMatrix& bie(ShapeKind kind, int n_nodes = 128, int n_dirs = 64) {
  static std::map<std::tuple<ShapeKind, int, int>, FarFieldMatrix> cache;
  const auto key = std::make_tuple(kind, n_nodes, n_dirs);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, assemble_far_field_matrix(make_curve(kind, default_params(kind)), 4.0, n_dirs, n_nodes))
             .first;
  return it->second;
}

const FarFieldMatrix& disk_oracle() {
  static const FarFieldMatrix f = disk_far_field_matrix(1.0, 4.0, 64);
  return f;
}

std::vector<Point> random_points(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(u(gen), u(gen));
  return pts;
}

}  // namespace

TEST(FunkHecke, CoincidentPoints) { EXPECT_LE(check_funk_hecke(4.0, Point(1, 2), Point(1, 2), 64), 1e-13); }

TEST(FunkHecke, AtIndependentJ0Zero) {
  const double zero = oracle::first_j0_zero();
  EXPECT_LE(check_funk_hecke(1.0, Point(zero, 0), Point(0, 0), 64), 1e-12);
  EXPECT_LE(check_funk_hecke(4.0, Point(0.3, 0.1), Point(0.3, 0.1 - zero / 4.0), 64), 1e-12);
}

TEST(FunkHecke, ModerateArgument) {
  for (double angle : {0.0, 0.3, 1.1})
    EXPECT_LE(check_funk_hecke(4.0, 2.5 * Point(std::cos(angle), std::sin(angle)), Point(0, 0), 64), 1e-10);
}

TEST(FunkHecke, DecaysSuperalgebraically) {
  double previous = check_funk_hecke(1.0, Point(6.0, 0.0), Point(0, 0), 8);
  for (int n : {12, 16, 20, 24, 28}) {
    const double r = check_funk_hecke(1.0, Point(6.0, 0.0), Point(0, 0), n);
    EXPECT_TRUE(r < 0.25 * previous || r < 1e-13) << n << " " << r;
    previous = r;
  }
  EXPECT_THROW(check_funk_hecke(1.0, Point(1, 0), Point(0, 0), 6), std::invalid_argument);
}

TEST(Identity, ZeroMatrixIsDegenerate) {
  FarFieldMatrix f;
  f.k = 1.0;
  f.directions = uniform_directions(8);
  f.entries = Eigen::MatrixXcd::Zero(8, 8);
  const auto rep = check_operator_identity(f);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_FALSE(rep.pass);
}

TEST(Identity, DiskOracle) {
  const auto rep = check_operator_identity(disk_oracle(), 1e-6);
  EXPECT_LE(rep.residual, 1e-6);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.n, 64);
  EXPECT_EQ(rep.shape, "circle");
}

TEST(Identity, StarAndPeanut) {
  for (auto kind : {ShapeKind::star, ShapeKind::peanut}) {
    const auto rep = check_operator_identity(bie(kind));
    EXPECT_LE(rep.residual, 1e-2) << to_string(kind);
    EXPECT_TRUE(rep.pass);
  }
}

TEST(Identity, UnweightedFormFails) {
  // omitting the trapezoid weight breaks the identity: the weight is needed
  const auto& f = disk_oracle();
  const Eigen::MatrixXcd fh = f.entries.adjoint();
  const Eigen::MatrixXcd defect = (f.entries - fh) - cdouble(0.0, 1.0 / (4.0 * std::numbers::pi)) * (fh * f.entries);
  EXPECT_GT(defect.norm() / f.entries.norm(), 1.0);
}

class IdentityConvergence : public ::testing::TestWithParam<ShapeKind> {};

TEST_P(IdentityConvergence, MonotoneInNodes) {
  // Non-increasing within 10% per doubling from 64 to 512 nodes; once the
  // residual is at roundoff (1e-12) further doublings only need to stay there.
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {64, 128, 256, 512}) {
    const double r = check_operator_identity(bie(GetParam(), n)).residual;
    EXPECT_TRUE(r <= 1.1 * previous || r < 1e-12) << to_string(GetParam()) << " n=" << n << " r=" << r;
    previous = r;
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, IdentityConvergence,
                         ::testing::Values(ShapeKind::circle, ShapeKind::ellipse, ShapeKind::peanut, ShapeKind::star,
                                           ShapeKind::kite),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Chain, ZeroImageHasNoSlack) {
  FarFieldMatrix f;
  f.k = 1.0;
  f.directions = uniform_directions(8);
  f.entries = Eigen::MatrixXcd::Zero(8, 8);
  EXPECT_EQ(check_equivalence_chain(f, {Point(0, 0), Point(1, 1)}), 0.0);
}

TEST(Chain, DiskOracle) { EXPECT_LE(check_equivalence_chain(disk_oracle(), random_points(100, 1)), 1e-6); }

TEST(Chain, PeanutBoundaryIntegral) {
  EXPECT_LE(check_equivalence_chain(bie(ShapeKind::peanut), random_points(100, 2)), 0.05);
}

TEST(Chain, ViolationIsMeasured) {
  // a matrix with a large anti-Hermitian part breaks the upper bound
  FarFieldMatrix f;
  f.k = 1.0;
  f.directions = uniform_directions(16);
  f.entries = Eigen::MatrixXcd::Identity(16, 16) * cdouble(0.0, 1e3);
  EXPECT_GT(check_equivalence_chain(f, {Point(0, 0)}), 0.1);
}

TEST(Chain, DiskPathsAgree) {
  const auto& bie_disk = bie(ShapeKind::circle);
  const auto pts = random_points(100, 3);
  const double a = check_equivalence_chain(bie_disk, pts);
  const double b = check_equivalence_chain(disk_oracle(), pts);
  // both are zero when the bounds hold strictly
  EXPECT_LE(a, std::max(10.0 * b, 1e-12));
  EXPECT_LE(b, std::max(10.0 * a, 1e-12));
  EXPECT_LT((bie_disk.entries - disk_oracle().entries).cwiseAbs().maxCoeff() /
                disk_oracle().entries.cwiseAbs().maxCoeff(),
            1e-6);
}

TEST(Decay, SlopesWithResolvedDirections) {
  const auto& f = bie(ShapeKind::star, 128, 1024);
  const auto radii = cli::log_spaced(10.0, 100.0, 16);
  const Point c = make_curve(ShapeKind::star, default_params(ShapeKind::star)).centroid();
  EXPECT_NEAR(check_decay_slope(f, Indicator::ip, 1.0, radii, 32, c), -1.0, 0.2);
  EXPECT_NEAR(check_decay_slope(f, Indicator::norm, 2.0, radii, 32, c), -1.0, 0.2);
}

TEST(Decay, ScaleInvariantSlope) {
  const auto& f = bie(ShapeKind::star, 128, 1024);
  auto scaled = f;
  scaled.entries *= 10.0;
  const auto radii = cli::log_spaced(10.0, 100.0, 6);
  const double a = check_decay_slope(f, Indicator::ip, 1.0, radii, 8);
  const double b = check_decay_slope(scaled, Indicator::ip, 1.0, radii, 8);
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(Decay, Preconditions) {
  const auto& f = disk_oracle();
  EXPECT_THROW(check_decay_slope(f, Indicator::ip, 1.0, {10.0}, 8), std::invalid_argument);
  EXPECT_THROW(check_decay_slope(f, Indicator::ip, 1.0, {10.0, 5.0}, 8), std::invalid_argument);
  FarFieldMatrix zero = f;
  zero.entries.setZero();
  EXPECT_THROW(check_decay_slope(zero, Indicator::ip, 1.0, {10.0, 20.0}, 8), DegenerateError);
}

TEST(Overlap, PerfectAndFullGrids) {
  const auto curve = make_curve(ShapeKind::star, default_params(ShapeKind::star));
  ImagingGrid grid;
  grid.spec.nx = grid.spec.ny = 80;
  grid.values.resize(80 * 80);
  for (std::size_t p = 0; p < grid.values.size(); ++p) grid.values[p] = curve.contains(grid.point(p)) ? 1.0 : 0.0;
  EXPECT_EQ(reconstruction_overlap(grid, curve, 0.5), 1.0);

  std::fill(grid.values.begin(), grid.values.end(), 1.0);
  std::size_t inside = 0;
  for (std::size_t p = 0; p < grid.values.size(); ++p) inside += curve.contains(grid.point(p));
  EXPECT_DOUBLE_EQ(reconstruction_overlap(grid, curve, 0.5), static_cast<double>(inside) / grid.values.size());
  // the pixel fraction approximates the area fraction
  EXPECT_NEAR(static_cast<double>(inside) / grid.values.size(), curve.signed_area() / 64.0, 0.01);

  std::fill(grid.values.begin(), grid.values.end(), 0.0);
  EXPECT_THROW(reconstruction_overlap(grid, curve, 0.5), DegenerateError);
  EXPECT_THROW(reconstruction_overlap(grid, curve, 1.0), std::invalid_argument);
}

TEST(Overlap, StarConfigurationAtThresholdPointThree) {
  // Spec example: star, delta 0.02, rho 4, W_ip, threshold 0.3 -> Jaccard >= 0.4.
  const auto curve = make_curve(ShapeKind::star, default_params(ShapeKind::star));
  const auto g = evaluate_grid(add_noise(bie(ShapeKind::star), {0.02, 0}), GridSpec{}, 4.0, Indicator::ip);
  EXPECT_GE(reconstruction_overlap(g, curve, 0.3), 0.4);
}

TEST(Spearman, KnownValues) {
  EXPECT_DOUBLE_EQ(spearman_correlation({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman_correlation({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  // monotone transform invariance
  EXPECT_DOUBLE_EQ(spearman_correlation({0.1, 0.5, 0.2, 0.9}, {0.01, 0.25, 0.04, 0.81}), 1.0);
  // ties: ranks {1.5, 1.5, 3} vs {1, 2, 3}
  EXPECT_NEAR(spearman_correlation({1, 1, 2}, {1, 2, 3}), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(Records, Format) {
  EXPECT_EQ(format_record("identity_bie", "star", 4.0, 64, 1.5e-12, 1e-2, true),
            "check=identity_bie shape=star k=4 N=64 value=1.500000e-12 tol=1.000000e-02 pass=1");
}

TEST(Reciprocity, DiskSatisfiesIt) {
  // u_inf(xhat_i, d_j) = u_inf(-d_j, -xhat_i); index of -d_j is j + N/2
  const auto& f = bie(ShapeKind::circle);
  for (int i = 0; i < 64; i += 7)
    for (int j = 0; j < 64; j += 5)
      EXPECT_LT(std::abs(f.entries(i, j) - f.entries((j + 32) % 64, (i + 32) % 64)), 1e-10);
}
