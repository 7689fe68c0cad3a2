#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "deblur/core.hpp"

namespace deblur {

/// Pixel container for the field of view. Pixels are kept as doubles at full
/// precision; maxval only records the intensity range of the source file and
/// is honored again on export.
struct Image {
  Matrix pixels;
  int maxval = 255;

  Index rows() const { return pixels.rows(); }
  Index cols() const { return pixels.cols(); }
};

/// Validates the FOV invariants for data coming from files or user code.
inline Image make_image(Matrix pixels, int maxval = 255) {
  detail::require(pixels.rows() >= 3 && pixels.cols() >= 3,
                  "Image: dimensions must be at least 3x3");
  detail::require(pixels.allFinite(), "Image: pixels must be finite");
  return Image{std::move(pixels), maxval};
}

struct NoiseSpec {
  double relative_level = 0.0;  // Frobenius-relative magnitude
  std::uint64_t seed = 0;
};

/// Identifier of the pinned noise generator, recorded in run metadata so runs
/// can be reproduced outside this library.
inline constexpr const char* kNoiseRngId = "mt19937_64-boxmuller-1";

namespace detail {

// Box-Muller on top of the standardized mt19937_64 stream; kept explicit
// because std::normal_distribution is implementation-defined.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;  // (0,1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;          // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace detail

/// g + eta with i.i.d. zero-mean Gaussian eta rescaled so that
/// ||eta||_F = relative_level * ||g||_F exactly; deterministic given the seed.
inline Matrix add_noise(const Matrix& g, const NoiseSpec& spec) {
  detail::require(spec.relative_level >= 0.0, "add_noise: negative level");
  if (spec.relative_level == 0.0) return g;
  detail::GaussianSampler gauss(spec.seed);
  Matrix eta(g.rows(), g.cols());
  for (Index r = 0; r < eta.rows(); ++r)
    for (Index c = 0; c < eta.cols(); ++c) eta(r, c) = gauss();
  const double raw = eta.norm();
  detail::require(raw > 0.0, "add_noise: degenerate noise draw");
  return g + (spec.relative_level * g.norm() / raw) * eta;
}

/// Relative Restoration Error ||x - f_true||_F / ||f_true||_F.
inline double rre(const Matrix& x, const Matrix& f_true) {
  detail::require(x.rows() == f_true.rows() && x.cols() == f_true.cols(),
                  "rre: dimension mismatch");
  const double denom = f_true.norm();
  detail::require(denom > 0.0, "rre: zero true image");
  return (x - f_true).norm() / denom;
}

}  // namespace deblur
