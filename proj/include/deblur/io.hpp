#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "deblur/core.hpp"
#include "deblur/image.hpp"
#include "deblur/psf.hpp"

namespace deblur {

namespace detail {

inline void io_fail(const std::string& path, const std::string& why) {
  throw std::runtime_error(path + ": " + why);
}

// Reads the next header token of a PNM file, skipping whitespace and comments.
inline std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
        tok.push_back(static_cast<char>(in.get()));
      return tok;
    }
  }
  return tok;
}

}  // namespace detail

/// Binary PGM (P5) reader, maxval up to 65535 (two-byte samples big-endian).
inline Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::io_fail(path, "cannot open");
  if (detail::pnm_token(in) != "P5") detail::io_fail(path, "not a binary PGM (P5)");
  const long w = std::stol(detail::pnm_token(in));
  const long h = std::stol(detail::pnm_token(in));
  const long maxval = std::stol(detail::pnm_token(in));
  if (w <= 0 || h <= 0) detail::io_fail(path, "bad dimensions");
  if (maxval <= 0 || maxval > 65535) detail::io_fail(path, "unsupported maxval");
  in.get();  // single whitespace after maxval
  Matrix px(h, w);
  const bool wide = maxval > 255;
  std::vector<unsigned char> row(static_cast<size_t>(w) * (wide ? 2 : 1));
  for (long r = 0; r < h; ++r) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!in) detail::io_fail(path, "truncated pixel data");
    for (long c = 0; c < w; ++c)
      px(r, c) = wide ? static_cast<double>((row[2 * c] << 8) | row[2 * c + 1])
                      : static_cast<double>(row[c]);
  }
  return make_image(std::move(px), static_cast<int>(maxval));
}

/// Binary PGM writer; clamps to [0, maxval] and rounds to nearest on export
/// only (in-memory pixels stay untouched doubles).
inline void write_pgm(const std::string& path, const Matrix& px, int maxval = 255) {
  detail::require(maxval > 0 && maxval <= 65535, "write_pgm: unsupported maxval");
  std::ofstream out(path, std::ios::binary);
  if (!out) detail::io_fail(path, "cannot open for writing");
  out << "P5\n" << px.cols() << " " << px.rows() << "\n" << maxval << "\n";
  const bool wide = maxval > 255;
  for (Index r = 0; r < px.rows(); ++r)
    for (Index c = 0; c < px.cols(); ++c) {
      double v = std::round(px(r, c));
      v = std::min(std::max(v, 0.0), static_cast<double>(maxval));
      const auto u = static_cast<std::uint16_t>(v);
      if (wide) {
        out.put(static_cast<char>(u >> 8));
        out.put(static_cast<char>(u & 0xff));
      } else {
        out.put(static_cast<char>(u));
      }
    }
  if (!out) detail::io_fail(path, "write failed");
}

inline void write_pgm(const std::string& path, const Image& img) {
  write_pgm(path, img.pixels, img.maxval);
}

/// Plain-text matrix: "rows cols" then one whitespace-separated row per line.
inline void write_matrix_text(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) detail::io_fail(path, "cannot open for writing");
  out << m.rows() << " " << m.cols() << "\n";
  out.precision(17);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out << m(r, c) << (c + 1 < m.cols() ? " " : "");
    out << "\n";
  }
}

inline Matrix read_matrix_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::io_fail(path, "cannot open");
  Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    detail::io_fail(path, "bad matrix header");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (!(in >> m(r, c))) detail::io_fail(path, "truncated matrix data");
  return m;
}

namespace detail {

// Normalization rule for masks read from text files: tiny deviations pass,
// sub-1% deviations are renormalized (truncated Gaussians), worse is an error.
inline Matrix renormalize_mask(Matrix taps, const std::string& path) {
  const double sum = taps.sum();
  if (sum <= 0.0) io_fail(path, "mask has nonpositive total mass");
  const double dev = std::abs(sum - 1.0);
  if (dev <= Psf::kMassTol) return taps;
  if (dev < 0.01) return taps / sum;
  io_fail(path, "mask mass deviates from 1 by more than 1%");
  return taps;
}

}  // namespace detail

/// PSF text format: first line "q1 q2", then 2q1+1 rows of 2q2+1 reals.
/// PGM masks are accepted too and divided by their total mass (integer
/// quantization cannot express unit sum).
inline Psf read_psf(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) detail::io_fail(path, "cannot open");
  char magic[2] = {0, 0};
  probe.read(magic, 2);
  probe.close();
  if (magic[0] == 'P' && magic[1] == '5') {
    Image img = read_pgm(path);
    detail::require(img.rows() % 2 == 1 && img.cols() % 2 == 1,
                    "read_psf: PGM mask must have odd dimensions");
    const double sum = img.pixels.sum();
    if (sum <= 0.0) detail::io_fail(path, "PGM mask has zero mass");
    return Psf(img.pixels / sum);
  }
  std::ifstream in(path);
  Index q1 = -1, q2 = -1;
  if (!(in >> q1 >> q2) || q1 < 0 || q2 < 0) detail::io_fail(path, "bad PSF header");
  Matrix taps(2 * q1 + 1, 2 * q2 + 1);
  for (Index r = 0; r < taps.rows(); ++r)
    for (Index c = 0; c < taps.cols(); ++c)
      if (!(in >> taps(r, c))) detail::io_fail(path, "truncated PSF data");
  return Psf(detail::renormalize_mask(std::move(taps), path));
}

inline void write_psf(const std::string& path, const Psf& p) {
  std::ofstream out(path);
  if (!out) detail::io_fail(path, "cannot open for writing");
  out << p.q1() << " " << p.q2() << "\n";
  out.precision(17);
  const Matrix& t = p.taps();
  for (Index r = 0; r < t.rows(); ++r) {
    for (Index c = 0; c < t.cols(); ++c) out << t(r, c) << (c + 1 < t.cols() ? " " : "");
    out << "\n";
  }
}

}  // namespace deblur
