#pragma once

#include <cmath>
#include <utility>

#include "deblur/core.hpp"

namespace deblur {

/// Compact blur mask with center-origin indexing: taps(q1+i1, q2+i2) holds
/// the coefficient for offset (i1, i2), i1 in [-q1, q1], i2 in [-q2, q2].
/// Taps are nonnegative and sum to one (mass conservation).
class Psf {
 public:
  explicit Psf(Matrix taps) : taps_(std::move(taps)) {
    detail::require(taps_.rows() >= 1 && taps_.cols() >= 1 &&
                        taps_.rows() % 2 == 1 && taps_.cols() % 2 == 1,
                    "Psf: taps must have odd dimensions");
    detail::require(taps_.allFinite(), "Psf: taps must be finite");
    detail::require((taps_.array() >= 0.0).all(), "Psf: taps must be nonnegative");
    detail::require(std::abs(taps_.sum() - 1.0) <= kMassTol,
                    "Psf: taps must sum to 1 (within 1e-12)");
    q1_ = (taps_.rows() - 1) / 2;
    q2_ = (taps_.cols() - 1) / 2;
  }

  Index q1() const { return q1_; }
  Index q2() const { return q2_; }
  const Matrix& taps() const { return taps_; }

  /// Tap at offset (i1, i2); no bounds beyond the support.
  double tap(Index i1, Index i2) const { return taps_(q1_ + i1, q2_ + i2); }

  static constexpr double kMassTol = 1e-12;

 private:
  Matrix taps_;
  Index q1_ = 0, q2_ = 0;
};

/// A delta mask (identity blur) of the given half-supports.
inline Psf delta_psf(Index q1 = 0, Index q2 = 0) {
  Matrix t = Matrix::Zero(2 * q1 + 1, 2 * q2 + 1);
  t(q1, q2) = 1.0;
  return Psf(std::move(t));
}

struct SymmetryReport {
  bool is_strongly_symmetric = false;
  double max_asymmetry = 0.0;  // largest |h_i - h_{|i|}| over the mask
};

constexpr double kSymmetryTol = 1e-12;

inline SymmetryReport symmetry_report(const Psf& p, double tol = kSymmetryTol) {
  double worst = 0.0;
  for (Index i1 = -p.q1(); i1 <= p.q1(); ++i1)
    for (Index i2 = -p.q2(); i2 <= p.q2(); ++i2)
      worst = std::max(worst,
                       std::abs(p.tap(i1, i2) - p.tap(std::abs(i1), std::abs(i2))));
  return {worst <= tol, worst};
}

inline bool is_strongly_symmetric(const Psf& p, double tol = kSymmetryTol) {
  return symmetry_report(p, tol).is_strongly_symmetric;
}

/// Axis-flip average s_{±i1,±i2} = (h_{-i1,-i2}+h_{-i1,i2}+h_{i1,-i2}+h_{i1,i2})/4.
/// Each orbit is averaged once and written to all four mirror cells, so the
/// result is strongly symmetric to the last bit and keeps the total mass.
inline Psf symmetrize(const Psf& p) {
  const Index q1 = p.q1(), q2 = p.q2();
  Matrix s(2 * q1 + 1, 2 * q2 + 1);
  for (Index i1 = 0; i1 <= q1; ++i1)
    for (Index i2 = 0; i2 <= q2; ++i2) {
      const double avg = (p.tap(-i1, -i2) + p.tap(-i1, i2) + p.tap(i1, -i2) +
                          p.tap(i1, i2)) /
                         4.0;
      s(q1 + i1, q2 + i2) = avg;
      s(q1 - i1, q2 + i2) = avg;
      s(q1 + i1, q2 - i2) = avg;
      s(q1 - i1, q2 - i2) = avg;
    }
  return Psf(std::move(s));
}

/// taps'_{i1,i2} = taps_{-i1,-i2}; the mask of the reblurring operator A'.
inline Psf rotate180(const Psf& p) {
  Matrix r = p.taps().reverse();
  return Psf(std::move(r));
}

/// Generating function of a strongly symmetric mask,
///   f(x1,x2) = h00 + 2*sum h_{s1,0} cos(s1 x1) + 2*sum h_{0,s2} cos(s2 x2)
///            + 4*sum sum h_{s1,s2} cos(s1 x1) cos(s2 x2).
/// Rejects non-symmetric masks: the cosine expansion would silently drop the
/// asymmetric mass.
inline double symbol_real(const Psf& p, double x1, double x2,
                          double tol = kSymmetryTol) {
  detail::require(is_strongly_symmetric(p, tol),
                  "symbol_real: mask is not strongly symmetric");
  double acc = p.tap(0, 0);
  for (Index s1 = 1; s1 <= p.q1(); ++s1) acc += 2.0 * p.tap(s1, 0) * std::cos(s1 * x1);
  for (Index s2 = 1; s2 <= p.q2(); ++s2) acc += 2.0 * p.tap(0, s2) * std::cos(s2 * x2);
  for (Index s1 = 1; s1 <= p.q1(); ++s1)
    for (Index s2 = 1; s2 <= p.q2(); ++s2)
      acc += 4.0 * p.tap(s1, s2) * std::cos(s1 * x1) * std::cos(s2 * x2);
  return acc;
}

/// Fourier symbol of an arbitrary mask: sum_s h_s exp(-i(s1 x1 + s2 x2)).
/// Reduces to symbol_real under strong symmetry.
inline Complex symbol_complex(const Psf& p, double x1, double x2) {
  Complex acc{0.0, 0.0};
  for (Index s1 = -p.q1(); s1 <= p.q1(); ++s1)
    for (Index s2 = -p.q2(); s2 <= p.q2(); ++s2)
      acc += p.tap(s1, s2) * std::exp(Complex(0.0, -(s1 * x1 + s2 * x2)));
  return acc;
}

/// Samples a 2D Gaussian of width sigma on the (2q1+1)x(2q2+1) grid, with the
/// Gaussian center displaced by (offset1, offset2) pixels from the mask center,
/// then normalizes. Nonzero offsets yield the "portion of a Gaussian blur"
/// masks: small offsets give slightly non-symmetric masks, large ones highly
/// non-symmetric masks.
inline Psf gaussian_portion_psf(double sigma, Index q1, Index q2,
                                double offset1 = 0.0, double offset2 = 0.0) {
  detail::require(sigma > 0.0, "gaussian_portion_psf: sigma must be positive");
  Matrix t(2 * q1 + 1, 2 * q2 + 1);
  for (Index i1 = -q1; i1 <= q1; ++i1)
    for (Index i2 = -q2; i2 <= q2; ++i2) {
      const double d1 = static_cast<double>(i1) - offset1;
      const double d2 = static_cast<double>(i2) - offset2;
      t(q1 + i1, q2 + i2) = std::exp(-(d1 * d1 + d2 * d2) / (2.0 * sigma * sigma));
    }
  t /= t.sum();
  return Psf(std::move(t));
}

}  // namespace deblur
