#ifndef PLATE_ECHO_IO_HPP
#define PLATE_ECHO_IO_HPP

// Text formats:
//   far field  "# biharmonic-farfield v1 N=<N> k=<k> shape=<kind>" then N^2
//              rows "i j re im" (1-based, row-major, 17 significant digits)
//   grid       CSV "x,y,value" in row-major grid order
//   raster     binary PGM (P5), 255 = indicator 1, top row = largest y
// Files are written to a temporary sibling and renamed into place.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plate_echo/error.hpp"
#include "plate_echo/forward.hpp"
#include "plate_echo/imaging.hpp"

namespace plate_echo::io {

inline constexpr const char* kFarFieldMagic = "# biharmonic-farfield v1";

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string format_far_field(const FarFieldMatrix& f) {
  const int n = f.size();
  if (f.entries.rows() != n || f.entries.cols() != n) throw std::invalid_argument("far-field matrix is not N x N");
  std::string out = std::string(kFarFieldMagic) + " N=" + std::to_string(n) + " k=" + format_double(f.k) +
                    " shape=" + f.shape + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(n) * n * 56);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cdouble v = f.entries(i, j);
      out += std::to_string(i + 1) + ' ' + std::to_string(j + 1) + ' ' + format_double(v.real()) + ' ' +
             format_double(v.imag()) + '\n';
    }
  return out;
}

inline FarFieldMatrix parse_far_field(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind(kFarFieldMagic, 0) != 0)
    throw FormatError("far-field file: missing header");
  std::istringstream hs(header.substr(std::string(kFarFieldMagic).size()));
  int n = -1;
  double k = -1.0;
  std::string shape;
  for (std::string field; hs >> field;) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw FormatError("far-field file: bad header field '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "N") n = std::stoi(value);
      else if (key == "k") k = std::stod(value);
      else if (key == "shape") shape = value;
      else throw FormatError("far-field file: unknown header key '" + key + "'");
    } catch (const std::logic_error&) {
      throw FormatError("far-field file: bad value for " + key);
    }
  }
  if (n < 1 || !(k > 0.0) || shape.empty()) throw FormatError("far-field file: incomplete header");

  FarFieldMatrix f;
  f.k = k;
  f.shape = shape;
  f.directions = uniform_directions(n);
  f.entries.resize(n, n);
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  std::string line;
  long count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int i, j;
    double re, im;
    std::string rest;
    if (!(ls >> i >> j >> re >> im) || (ls >> rest)) throw FormatError("far-field file: bad row '" + line + "'");
    if (i < 1 || i > n || j < 1 || j > n) throw FormatError("far-field file: index out of range");
    auto& flag = seen[static_cast<std::size_t>(i - 1) * n + (j - 1)];
    if (flag) throw FormatError("far-field file: duplicate entry");
    flag = 1;
    f.entries(i - 1, j - 1) = cdouble(re, im);
    ++count;
  }
  if (count != static_cast<long>(n) * n) throw FormatError("far-field file: expected N^2 entries");
  return f;
}

inline void write_far_field(const std::filesystem::path& path, const FarFieldMatrix& f) {
  atomic_write(path, format_far_field(f));
}

inline FarFieldMatrix read_far_field(const std::filesystem::path& path) { return parse_far_field(read_file(path)); }

inline std::string format_grid_csv(const ImagingGrid& grid) {
  std::string out = "x,y,value\n";
  for (int iy = 0; iy < grid.spec.ny; ++iy)
    for (int ix = 0; ix < grid.spec.nx; ++ix)
      out += format_double(grid.spec.x(ix)) + ',' + format_double(grid.spec.y(iy)) + ',' +
             format_double(grid.at(ix, iy)) + '\n';
  return out;
}

inline std::string format_pgm(const ImagingGrid& grid) {
  const int nx = grid.spec.nx, ny = grid.spec.ny;
  std::string out = "P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
  for (int iy = ny - 1; iy >= 0; --iy)
    for (int ix = 0; ix < nx; ++ix) {
      const double v = std::clamp(grid.at(ix, iy), 0.0, 1.0);
      out += static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
    }
  return out;
}

inline void write_grid_csv(const std::filesystem::path& path, const ImagingGrid& grid) {
  atomic_write(path, format_grid_csv(grid));
}

inline void write_pgm(const std::filesystem::path& path, const ImagingGrid& grid) { atomic_write(path, format_pgm(grid)); }

}  // namespace plate_echo::io

#endif  // PLATE_ECHO_IO_HPP
