#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "plate_echo/cli.hpp"

using namespace plate_echo;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = PLATE_ECHO_CONFIG_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "plate_echo");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("plate_echo_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> csv_values(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,value");
  std::vector<double> v;
  while (std::getline(in, line)) v.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  return v;
}

double summary_field(const std::string& out, const std::string& key) {
  const auto pos = out.find(" " + key + "=");
  EXPECT_NE(pos, std::string::npos) << out;
  return std::stod(out.substr(pos + key.size() + 2));
}

}  // namespace

TEST(Cli, ForwardCircleIsCirculant) {
  const auto dir = scratch_dir("circle");
  const auto r = run({"--config", kConfigs + "/circle.ini", "--out", dir.string(), "forward"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = io::read_far_field(dir / "farfield.txt");
  double dev = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) dev = std::max(dev, std::abs(f.entries(i, j) - f.entries((i - j + 64) % 64, 0)));
  EXPECT_LT(dev, 1e-8);
}

TEST(Cli, ForwardStarDefaultsAndDeterminism) {
  const auto a = scratch_dir("star_a");
  const auto b = scratch_dir("star_b");
  const auto ra = run({"--out", a.string(), "forward"});
  const auto rb = run({"forward", "--out", b.string()});
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_NE(ra.out.find("check=identity_bie shape=star k=4 N=64"), std::string::npos);
  EXPECT_NE(ra.out.find("pass=1"), std::string::npos);
  const auto f = io::read_far_field(a / "farfield.txt");
  EXPECT_EQ(f.size(), 64);
  EXPECT_EQ(slurp(a / "farfield.txt"), slurp(b / "farfield.txt"));
}

TEST(Cli, ImageNoiselessArgmaxInside) {
  const auto dir = scratch_dir("image");
  ASSERT_EQ(run({"--out", dir.string(), "forward"}).code, 0);
  const auto r = run({"--config", kConfigs + "/paper_star.ini", "--out", dir.string(), "image"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(summary_field(r.out, "inside"), 1.0);
  EXPECT_EQ(summary_field(r.out, "value"), 1.0);
  const auto v = csv_values(dir / "grid.csv");
  EXPECT_EQ(v.size(), 150u * 150u);
  EXPECT_EQ(*std::max_element(v.begin(), v.end()), 1.0);
  EXPECT_EQ(slurp(dir / "grid.pgm").substr(0, 15), "P5\n150 150\n255\n");
}

TEST(Cli, ImageGridsByteIdenticalAcrossRuns) {
  const auto dir = scratch_dir("image_det");
  ASSERT_EQ(run({"--out", dir.string(), "forward"}).code, 0);
  const std::string m = (dir / "farfield.txt").string();
  ASSERT_EQ(run({"--config", kConfigs + "/paper_star_noisy.ini", "--out", (dir / "a").string(), "image", "--matrix", m})
                .code,
            0);
  ASSERT_EQ(run({"--config", kConfigs + "/paper_star_noisy.ini", "--out", (dir / "b").string(), "image", "--matrix", m})
                .code,
            0);
  EXPECT_EQ(slurp(dir / "a" / "grid.csv"), slurp(dir / "b" / "grid.csv"));
  ASSERT_EQ(run({"--config", kConfigs + "/paper_star_noisy.ini", "--seed", "1", "--out", (dir / "c").string(), "image",
                 "--matrix", m})
                .code,
            0);
  EXPECT_NE(slurp(dir / "a" / "grid.csv"), slurp(dir / "c" / "grid.csv"));
}

TEST(Cli, PeanutIndicatorsAgreeUnderHeavyNoise) {
  const auto dir = scratch_dir("peanut");
  ASSERT_EQ(run({"--preset", "paper-peanut", "--out", dir.string(), "forward"}).code, 0);
  std::ofstream(dir / "ip.ini") << "[imaging]\ndelta = 0.3\nrho = 4\nwhich = ip\n[output]\ngrid = ip.csv\n";
  std::ofstream(dir / "norm.ini") << "[imaging]\ndelta = 0.3\nrho = 8\nwhich = norm\n[output]\ngrid = norm.csv\n";
  ASSERT_EQ(run({"--preset", "paper-peanut", "--config", (dir / "ip.ini").string(), "--out", dir.string(), "image"}).code, 0);
  ASSERT_EQ(
      run({"--preset", "paper-peanut", "--config", (dir / "norm.ini").string(), "--out", dir.string(), "image"}).code, 0);
  EXPECT_GE(spearman_correlation(csv_values(dir / "ip.csv"), csv_values(dir / "norm.csv")), 0.95);
}

TEST(Cli, PartialApertureArgmaxNearCavity) {
  const auto dir = scratch_dir("partial");
  ASSERT_EQ(run({"--preset", "paper-peanut", "--out", dir.string(), "forward"}).code, 0);
  const auto r = run({"--config", kConfigs + "/peanut_partial_aperture.ini", "--out", dir.string(), "image"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(summary_field(r.out, "distance"), 0.5);
}

TEST(Cli, ImageErrors) {
  const auto dir = scratch_dir("image_err");
  // missing matrix file
  EXPECT_EQ(run({"--out", dir.string(), "image"}).code, cli::kConfigFailure);
  // N mismatch with the configuration
  io::write_far_field(dir / "farfield.txt", disk_far_field_matrix(1.0, 4.0, 32));
  EXPECT_EQ(run({"--out", dir.string(), "image"}).code, cli::kConfigFailure);
  // all-zero data: nothing to normalize
  auto zero = disk_far_field_matrix(1.0, 4.0, 64);
  zero.entries.setZero();
  io::write_far_field(dir / "farfield.txt", zero);
  EXPECT_EQ(run({"--out", dir.string(), "image"}).code, cli::kDegenerateOutput);
}

TEST(Cli, VerifyDefaultPasses) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  int lines = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_GE(lines, 12);
  EXPECT_EQ(r.out.find("pass=0"), std::string::npos) << r.out;
}

TEST(Cli, VerifyUnderResolvedFails) {
  const auto r = run({"--config", kConfigs + "/under_resolved.ini", "verify"});
  EXPECT_EQ(r.code, cli::kVerificationFailure) << r.out << r.err;
  EXPECT_NE(r.out.find("check=identity_bie shape=star k=4 N=64"), std::string::npos);
}

TEST(Cli, InvalidConfigExitCode) {
  EXPECT_EQ(run({"--config", kConfigs + "/invalid_k.ini", "verify"}).code, cli::kConfigFailure);
  EXPECT_EQ(run({"--config", "/nonexistent.ini", "forward"}).code, cli::kConfigFailure);
  EXPECT_EQ(run({"--preset", "paper-kite", "forward"}).code, cli::kConfigFailure);
  EXPECT_EQ(run({}).code, cli::kConfigFailure);
  EXPECT_EQ(run({"--bogus", "forward"}).code, cli::kConfigFailure);
}

TEST(Cli, OracleCommand) {
  const auto dir = scratch_dir("oracle");
  const auto r = run({"--out", dir.string(), "oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("check=identity_oracle shape=circle"), std::string::npos);
  EXPECT_EQ(io::read_far_field(dir / "oracle_farfield.txt").size(), 64);
}

TEST(Cli, DumpedConfigReproducesRun) {
  const auto dir = scratch_dir("dump");
  const auto dumped = run({"--config", kConfigs + "/paper_peanut.ini", "--seed", "7", "--dump-config", "forward"});
  ASSERT_EQ(dumped.code, 0);
  std::ofstream(dir / "effective.ini") << dumped.out;
  const auto again = run({"--config", (dir / "effective.ini").string(), "--dump-config", "forward"});
  EXPECT_EQ(again.out, dumped.out);
  EXPECT_NE(dumped.out.find("seed = 7"), std::string::npos);
  EXPECT_NE(dumped.out.find("kind = peanut"), std::string::npos);
}
