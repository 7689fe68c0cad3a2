#pragma once

#include <utility>

#include "deblur/boundary.hpp"
#include "deblur/core.hpp"
#include "deblur/psf.hpp"
#include "deblur/transforms.hpp"

namespace deblur {

/// The square blurring matrix A_n for one boundary condition, applied as
/// BC padding followed by a valid-region correlation
///   g_i = sum_{s=-q}^{q} h_s f_{i-s}.
/// One code path serves all four BCs; the structured block forms live in the
/// test oracles.
class BlurOperator {
 public:
  BlurOperator(Psf psf, BoundaryCondition bc, Index n1, Index n2)
      : psf_(std::move(psf)), bc_(bc), n1_(n1), n2_(n2) {
    detail::require(n1 >= 1 && n2 >= 1, "BlurOperator: empty field of view");
    detail::check_support(n1, n2, psf_.q1(), psf_.q2(), bc);
  }

  const Psf& psf() const { return psf_; }
  BoundaryCondition bc() const { return bc_; }
  Index n1() const { return n1_; }
  Index n2() const { return n2_; }

 private:
  Psf psf_;
  BoundaryCondition bc_;
  Index n1_, n2_;
};

namespace detail {

// Valid-region correlation of a padded image with the mask; direct summation.
inline Matrix correlate_valid_direct(const Matrix& padded, const Psf& p,
                                     Index n1, Index n2) {
  const Index q1 = p.q1(), q2 = p.q2();
  Matrix g = Matrix::Zero(n1, n2);
  for (Index r = 0; r < n1; ++r)
    for (Index c = 0; c < n2; ++c) {
      double acc = 0.0;
      for (Index s1 = -q1; s1 <= q1; ++s1)
        for (Index s2 = -q2; s2 <= q2; ++s2)
          acc += p.tap(s1, s2) * padded(r + q1 - s1, c + q2 - s2);
      g(r, c) = acc;
    }
  return g;
}

// Same contraction through zero-padded DFTs; kicks in for wide masks to keep
// the apply O(N log N).
inline Matrix correlate_valid_fft(const Matrix& padded, const Psf& p,
                                  Index n1, Index n2) {
  const Index q1 = p.q1(), q2 = p.q2();
  const Index L1 = padded.rows() + 2 * q1;
  const Index L2 = padded.cols() + 2 * q2;
  CMatrix a = CMatrix::Zero(L1, L2);
  a.topLeftCorner(padded.rows(), padded.cols()) = padded.cast<Complex>();
  CMatrix k = CMatrix::Zero(L1, L2);
  k.topLeftCorner(2 * q1 + 1, 2 * q2 + 1) = p.taps().cast<Complex>();
  const CMatrix prod = dft2_forward(a).cwiseProduct(dft2_forward(k));
  const Matrix full = dft2_inverse_real(prod);
  return full.block(2 * q1, 2 * q2, n1, n2);
}

inline constexpr Index kDirectConvMaxQ = 7;

}  // namespace detail

/// g = A_n f: pad, then correlate the valid region.
inline Matrix apply(const BlurOperator& op, const Matrix& f) {
  detail::require(f.rows() == op.n1() && f.cols() == op.n2(),
                  "apply: image does not match the operator's field of view");
  const Matrix padded = pad(f, op.psf().q1(), op.psf().q2(), op.bc());
  if (op.psf().q1() <= detail::kDirectConvMaxQ &&
      op.psf().q2() <= detail::kDirectConvMaxQ)
    return detail::correlate_valid_direct(padded, op.psf(), op.n1(), op.n2());
  return detail::correlate_valid_fft(padded, op.psf(), op.n1(), op.n2());
}

/// A' r: the operator with the mask rotated by 180 degrees, same BC. This is
/// the reblurring adjoint; it equals A^T only for Zero and Periodic BCs.
inline Matrix apply_reblur_adjoint(const BlurOperator& op, const Matrix& r) {
  BlurOperator rotated(rotate180(op.psf()), op.bc(), op.n1(), op.n2());
  return apply(rotated, r);
}

inline constexpr Index kDensifyCap = 4096;

/// Materializes A_n column by column (column j = A e_j, row-major vec);
/// intended for small oracle-scale problems only.
inline Eigen::MatrixXd densify(const BlurOperator& op, Index cap = kDensifyCap) {
  const Index n = op.n1() * op.n2();
  detail::require(n <= cap, "densify: problem size exceeds the cap");
  Eigen::MatrixXd a(n, n);
  Matrix e = Matrix::Zero(op.n1(), op.n2());
  for (Index j = 0; j < n; ++j) {
    e(j / op.n2(), j % op.n2()) = 1.0;
    const Matrix col = apply(op, e);
    a.col(j) = Eigen::Map<const Vector>(col.data(), n);
    e(j / op.n2(), j % op.n2()) = 0.0;
  }
  return a;
}

}  // namespace deblur
