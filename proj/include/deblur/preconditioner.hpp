#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <utility>

#include "deblur/core.hpp"
#include "deblur/psf.hpp"
#include "deblur/spectral.hpp"

namespace deblur {

/// Which structured algebra carries the preconditioner, and the Tikhonov
/// parameter of the filter d_j = 1 / (|lambda_j|^2 + alpha).
struct PreconditionerSpec {
  Algebra algebra = Algebra::AntiReflective;
  double alpha = 0.0;
};

/// D of the preconditioned iteration: a spectral operator whose eigenvalues
/// are the Tikhonov-filtered d_j, plus the mask its spectrum came from.
struct FilteredOperator {
  SpectralOperator sop;  // real eigenvalue grid d_j (stored complex for circulant)
  std::optional<Psf> source_psf;
  double alpha = 0.0;
};

/// The mask generating the Frobenius-optimal preconditioner in the reflective
/// and anti-reflective algebras: the symmetrized PSF. (The identical formula
/// serves both algebras.)
inline Psf optimal_symbol_psf(const Psf& p) { return symmetrize(p); }

/// Applies d_j = 1/(|lambda_j|^2 + alpha) to an eigenvalue grid of any
/// algebra. alpha must be positive whenever some |lambda_j| vanishes.
inline FilteredOperator tikhonov_filter(const SpectralOperator& base, double alpha) {
  detail::require(alpha >= 0.0, "tikhonov_filter: alpha must be nonnegative");
  FilteredOperator d;
  d.alpha = alpha;
  d.sop.algebra = base.algebra;
  d.sop.n1 = base.n1;
  d.sop.n2 = base.n2;
  Matrix mod2(base.n1, base.n2);
  if (base.is_complex())
    mod2 = base.ceigs.cwiseAbs2().real();
  else
    mod2 = base.eigs.cwiseAbs2();
  detail::require(alpha > 0.0 || (mod2.array() > 0.0).all(),
                  "tikhonov_filter: alpha = 0 with a zero eigenvalue");
  const Matrix filt = (mod2.array() + alpha).inverse().matrix();
  if (base.is_complex())
    d.sop.ceigs = filt.cast<Complex>();
  else
    d.sop.eigs = filt;
  return d;
}

/// Builds D from the PSF along the three construction paths: raw mask through
/// the circulant spectrum, or symmetrized mask through the reflective /
/// anti-reflective spectra.
inline FilteredOperator build_tikhonov(const Psf& p, const PreconditionerSpec& spec,
                                       Index n1, Index n2) {
  SpectralOperator base;
  std::optional<Psf> source;
  switch (spec.algebra) {
    case Algebra::Circulant:
      base = eig_periodic(p, n1, n2);
      source = p;
      break;
    case Algebra::CosineIII:
      source = symmetrize(p);
      base = eig_reflective(*source, n1, n2);
      break;
    case Algebra::AntiReflective:
      source = symmetrize(p);
      base = eig_antireflective(*source, n1, n2);
      break;
    case Algebra::Tau:
      throw std::invalid_argument("build_tikhonov: tau is not a preconditioner algebra");
  }
  FilteredOperator d = tikhonov_filter(base, spec.alpha);
  d.source_psf = std::move(source);
  return d;
}

/// D r through the algebra's transform pair.
inline Matrix precondition_apply(const FilteredOperator& d, const Matrix& r) {
  return filter_apply(d.sop, r);
}

namespace detail {

// Collocation matrix of cosine monomials on a per-axis grid: M(s, j) = cos(j x_s).
inline Eigen::MatrixXd cosine_collocation(const Vector& x) {
  const Index m = x.size();
  Eigen::MatrixXd mat(m, m);
  for (Index s = 0; s < m; ++s)
    for (Index j = 0; j < m; ++j) mat(s, j) = std::cos(static_cast<double>(j) * x(s));
  return mat;
}

// Solves M1 C M2^T = D for the coefficient matrix C.
inline Eigen::MatrixXd cosine_coefficients(const Eigen::MatrixXd& m1,
                                           const Eigen::MatrixXd& m2,
                                           const Eigen::MatrixXd& d) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr1(m1), qr2(m2);
  const Eigen::MatrixXd x = qr1.solve(d);
  return qr2.solve(x.transpose()).transpose();
}

}  // namespace detail

/// Inverse-transforms a filter spectrum back to a spatial kernel of FOV size:
/// for the circulant algebra the inverse 2D DFT (corner-wrapped kernel), for
/// the cosine/anti-reflective algebras the cosine-series coefficients on the
/// nonnegative quadrant (weights 1/2/4 folded out, matching the mask symbol
/// convention). Diagnostic companion to the filters; re-running
/// filter_spectrum_of_kernel on the result reproduces the d_j grid.
inline Matrix psf_of_filter(const FilteredOperator& d) {
  const Index n1 = d.sop.n1, n2 = d.sop.n2;
  switch (d.sop.algebra) {
    case Algebra::Circulant:
      return dft2_inverse_real(d.sop.ceigs);
    case Algebra::CosineIII: {
      const Eigen::MatrixXd m1 = detail::cosine_collocation(detail::reflective_grid(n1));
      const Eigen::MatrixXd m2 = detail::cosine_collocation(detail::reflective_grid(n2));
      Eigen::MatrixXd c = detail::cosine_coefficients(m1, m2, d.sop.eigs);
      for (Index j1 = 0; j1 < n1; ++j1)
        for (Index j2 = 0; j2 < n2; ++j2)
          c(j1, j2) /= (j1 == 0 ? 1.0 : 2.0) * (j2 == 0 ? 1.0 : 2.0);
      return Matrix(c);
    }
    case Algebra::AntiReflective: {
      // The two border grid points coincide at x = 0; solve on the reduced
      // (m-1)-point grid and zero-pad the last coefficient.
      const Vector g1 = detail::antireflective_grid(n1).head(n1 - 1);
      const Vector g2 = detail::antireflective_grid(n2).head(n2 - 1);
      const Eigen::MatrixXd m1 = detail::cosine_collocation(g1);
      const Eigen::MatrixXd m2 = detail::cosine_collocation(g2);
      const Eigen::MatrixXd reduced = d.sop.eigs.topLeftCorner(n1 - 1, n2 - 1);
      const Eigen::MatrixXd c = detail::cosine_coefficients(m1, m2, reduced);
      Matrix k = Matrix::Zero(n1, n2);
      for (Index j1 = 0; j1 + 1 < n1; ++j1)
        for (Index j2 = 0; j2 + 1 < n2; ++j2)
          k(j1, j2) = c(j1, j2) / ((j1 == 0 ? 1.0 : 2.0) * (j2 == 0 ? 1.0 : 2.0));
      return k;
    }
    case Algebra::Tau:
      throw std::invalid_argument("psf_of_filter: tau filters are not constructed");
  }
  throw std::invalid_argument("psf_of_filter: unknown algebra");
}

/// Forward companion of psf_of_filter: evaluates the kernel's spectrum on the
/// algebra's grid.
inline Matrix filter_spectrum_of_kernel(Algebra algebra, const Matrix& kernel,
                                        Index n1, Index n2) {
  switch (algebra) {
    case Algebra::Circulant:
      return dft2_forward(kernel).real();
    case Algebra::CosineIII:
    case Algebra::AntiReflective: {
      const Vector g1 = algebra == Algebra::CosineIII ? detail::reflective_grid(n1)
                                                      : detail::antireflective_grid(n1);
      const Vector g2 = algebra == Algebra::CosineIII ? detail::reflective_grid(n2)
                                                      : detail::antireflective_grid(n2);
      Matrix out(n1, n2);
      for (Index s1 = 0; s1 < n1; ++s1)
        for (Index s2 = 0; s2 < n2; ++s2) {
          double acc = 0.0;
          for (Index j1 = 0; j1 < kernel.rows(); ++j1)
            for (Index j2 = 0; j2 < kernel.cols(); ++j2) {
              const double w = (j1 == 0 ? 1.0 : 2.0) * (j2 == 0 ? 1.0 : 2.0);
              acc += w * kernel(j1, j2) * std::cos(j1 * g1(s1)) * std::cos(j2 * g2(s2));
            }
          out(s1, s2) = acc;
        }
      return out;
    }
    case Algebra::Tau:
      throw std::invalid_argument("filter_spectrum_of_kernel: tau not supported");
  }
  throw std::invalid_argument("filter_spectrum_of_kernel: unknown algebra");
}

}  // namespace deblur
