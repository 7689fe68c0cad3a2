#pragma once

#include <cmath>

#include "deblur/core.hpp"

namespace deblur {

namespace detail {

// Piecewise-smooth test scene on the unit square (extends smoothly outside):
// a tilted background with a disk, a rectangle and a smooth bump. The ramp
// keeps a nonzero gradient across the FOV border, which is what separates the
// boundary conditions.
inline double scene_value(double u, double v) {
  double s = 40.0 + 110.0 * u + 55.0 * v;
  const double du = u - 0.34, dv = v - 0.38;
  if (du * du + dv * dv < 0.17 * 0.17) s += 62.0;
  if (u > 0.56 && u < 0.82 && v > 0.14 && v < 0.42) s += 48.0;
  const double bu = u - 0.70, bv = v - 0.76;
  s += 36.0 * std::exp(-(bu * bu + bv * bv) / (2.0 * 0.11 * 0.11));
  return s;
}

}  // namespace detail

/// Deterministic bundled scene: samples the analytic scene at pixel centers.
/// The FOV is rows x cols; pad1/pad2 extra pixels on each side sample the
/// same continuous scene beyond the FOV (for honest data generation).
inline Matrix synthetic_scene(Index rows, Index cols, Index pad1 = 0, Index pad2 = 0) {
  detail::require(rows >= 1 && cols >= 1, "synthetic_scene: empty size");
  Matrix out(rows + 2 * pad1, cols + 2 * pad2);
  for (Index r = 0; r < out.rows(); ++r)
    for (Index c = 0; c < out.cols(); ++c) {
      const double u = (static_cast<double>(r - pad1) + 0.5) / static_cast<double>(rows);
      const double v = (static_cast<double>(c - pad2) + 0.5) / static_cast<double>(cols);
      out(r, c) = detail::scene_value(u, v);
    }
  return out;
}

}  // namespace deblur
