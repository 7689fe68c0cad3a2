#pragma once

#include <utility>
#include <vector>

#include "deblur/core.hpp"
#include "deblur/psf.hpp"
#include "deblur/transforms.hpp"

namespace deblur {

enum class Algebra { Circulant, CosineIII, Tau, AntiReflective };

inline const char* to_string(Algebra a) {
  switch (a) {
    case Algebra::Circulant: return "circulant";
    case Algebra::CosineIII: return "cosine3";
    case Algebra::Tau: return "tau";
    case Algebra::AntiReflective: return "antireflective";
  }
  return "?";
}

/// A diagonalized operator: an algebra tag plus its eigenvalue grid, applied
/// in O(N log N) through the algebra's transform pair. Circulant grids may be
/// complex; the three trigonometric algebras carry real grids.
///
/// Grid ordering follows the transform's column order per axis. For the
/// anti-reflective algebra the per-axis grid is the tau grid extended by 0 at
/// both borders: index 0 and index m-1 are the x = 0 border columns of T_m,
/// indices 1..m-2 the interior sine columns at x_r = r pi/(m-1).
struct SpectralOperator {
  Algebra algebra = Algebra::Circulant;
  Matrix eigs;       // real algebras
  CMatrix ceigs;     // circulant
  Index n1 = 0, n2 = 0;

  bool is_complex() const { return algebra == Algebra::Circulant; }
};

namespace detail {

inline Matrix symbol_grid(const Psf& p, const Vector& x1, const Vector& x2) {
  Matrix g(x1.size(), x2.size());
  for (Index a = 0; a < x1.size(); ++a)
    for (Index b = 0; b < x2.size(); ++b) g(a, b) = symbol_real(p, x1(a), x2(b));
  return g;
}

inline Vector reflective_grid(Index m) {
  Vector x(m);
  for (Index r = 0; r < m; ++r) x(r) = static_cast<double>(r) * kPi / static_cast<double>(m);
  return x;
}

inline Vector tau_grid(Index m) {
  Vector x(m);
  for (Index r = 0; r < m; ++r)
    x(r) = static_cast<double>(r + 1) * kPi / static_cast<double>(m + 1);
  return x;
}

inline Vector antireflective_grid(Index m) {
  Vector x = Vector::Zero(m);
  for (Index r = 1; r <= m - 2; ++r)
    x(r) = static_cast<double>(r) * kPi / static_cast<double>(m - 1);
  x(m - 1) = 0.0;
  return x;
}

}  // namespace detail

/// Eigenvalues of the reflective (DCT-III algebra) blur matrix:
/// lambda_s = f(x_{s1}, x_{s2}) on x_r = (r-1) pi / m, ordered like R_n's columns.
inline SpectralOperator eig_reflective(const Psf& p, Index n1, Index n2) {
  detail::require(is_strongly_symmetric(p),
                  "eig_reflective: mask is not strongly symmetric");
  SpectralOperator sop;
  sop.algebra = Algebra::CosineIII;
  sop.n1 = n1;
  sop.n2 = n2;
  sop.eigs = detail::symbol_grid(p, detail::reflective_grid(n1), detail::reflective_grid(n2));
  return sop;
}

/// Eigenvalues of the periodic (circulant) blur matrix: the 2D DFT of the mask
/// embedded circulantly at the corner, equivalently the complex symbol on
/// x_r = 2 pi r / m. Handles non-symmetric masks.
inline SpectralOperator eig_periodic(const Psf& p, Index n1, Index n2) {
  detail::require(2 * p.q1() <= n1 && 2 * p.q2() <= n2,
                  "eig_periodic: circulant embedding needs q <= n/2");
  Matrix c = Matrix::Zero(n1, n2);
  for (Index s1 = -p.q1(); s1 <= p.q1(); ++s1)
    for (Index s2 = -p.q2(); s2 <= p.q2(); ++s2)
      c((s1 + n1) % n1, (s2 + n2) % n2) += p.tap(s1, s2);
  SpectralOperator sop;
  sop.algebra = Algebra::Circulant;
  sop.n1 = n1;
  sop.n2 = n2;
  sop.ceigs = dft2_forward(c);
  return sop;
}

/// Eigenvalues of the tau (DST-I algebra) matrix generated by the mask:
/// lambda_s = f(x_{s1}, x_{s2}) on x_r = r pi / (m+1).
inline SpectralOperator eig_tau(const Psf& p, Index n1, Index n2) {
  detail::require(is_strongly_symmetric(p), "eig_tau: mask is not strongly symmetric");
  SpectralOperator sop;
  sop.algebra = Algebra::Tau;
  sop.n1 = n1;
  sop.n2 = n2;
  sop.eigs = detail::symbol_grid(p, detail::tau_grid(n1), detail::tau_grid(n2));
  return sop;
}

/// Eigenvalues of the anti-reflective blur matrix: the tau evaluation grid
/// extended by 0 at the borders. Reproduces the known multiset: 1 with
/// multiplicity 4 at the corners, the row/column condensed tau values twice
/// each along the borders, and the inner two-level tau values.
inline SpectralOperator eig_antireflective(const Psf& p, Index n1, Index n2) {
  detail::require(is_strongly_symmetric(p),
                  "eig_antireflective: mask is not strongly symmetric");
  detail::require(n1 >= 3 && n2 >= 3, "eig_antireflective: sizes must be >= 3");
  detail::require(p.q1() <= n1 - 2 && p.q2() <= n2 - 2,
                  "eig_antireflective: support condition violated");
  SpectralOperator sop;
  sop.algebra = Algebra::AntiReflective;
  sop.n1 = n1;
  sop.n2 = n2;
  sop.eigs = detail::symbol_grid(p, detail::antireflective_grid(n1),
                                 detail::antireflective_grid(n2));
  return sop;
}

/// transform^-1 . diag(eigenvalues) . transform . x for the operator's
/// algebra; for the anti-reflective pair this is T_n Lambda Ttilde_n x with
/// Ttilde applied first.
inline Matrix filter_apply(const SpectralOperator& sop, const Matrix& x) {
  detail::require(x.rows() == sop.n1 && x.cols() == sop.n2,
                  "filter_apply: size mismatch");
  switch (sop.algebra) {
    case Algebra::Circulant: {
      CMatrix xhat = dft2_forward(x);
      xhat = xhat.cwiseProduct(sop.ceigs);
      return dft2_inverse_real(xhat);
    }
    case Algebra::CosineIII: {
      // A = R^T diag(lambda) R: the eigenvectors are the sampled cosines,
      // i.e. the rows of the forward transform.
      Matrix xhat = tensor_apply(TransformKind::CosineIII, x);
      xhat = xhat.cwiseProduct(sop.eigs);
      return detail::tensor_map(
          xhat, [](const Vector& v) { return cosine3_inverse(v); },
          [](const Vector& v) { return cosine3_inverse(v); });
    }
    case Algebra::Tau: {
      Matrix xhat = tensor_apply(TransformKind::SineI, x);
      xhat = xhat.cwiseProduct(sop.eigs);
      return tensor_apply(TransformKind::SineI, xhat);
    }
    case Algebra::AntiReflective: {
      Matrix xhat = tensor_apply(TransformKind::AntiReflectiveInverse, x);
      xhat = xhat.cwiseProduct(sop.eigs);
      return tensor_apply(TransformKind::AntiReflective, xhat);
    }
  }
  throw std::invalid_argument("filter_apply: unknown algebra");
}

}  // namespace deblur
