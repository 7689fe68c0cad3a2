#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "deblur/blur.hpp"
#include "deblur/psf.hpp"

namespace deblur::oracle {

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng,
                            double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

inline Psf random_psf(Index q1, Index q2, std::mt19937_64& rng) {
  Matrix t = random_matrix(2 * q1 + 1, 2 * q2 + 1, rng, 0.05, 1.0);
  t /= t.sum();
  return Psf(std::move(t));
}

inline Psf random_symmetric_psf(Index q1, Index q2, std::mt19937_64& rng) {
  return symmetrize(random_psf(q1, q2, rng));
}

// Sorted real eigenvalues; `symmetric` picks the self-adjoint solver, the
// general solver is used otherwise and small imaginary parts are checked.
inline Eigen::VectorXd dense_real_eigenvalues(const Eigen::MatrixXd& a,
                                              bool symmetric,
                                              double imag_tol = 1e-8) {
  Eigen::VectorXd ev;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    ev = es.eigenvalues();
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > imag_tol)
      throw std::runtime_error("dense_real_eigenvalues: complex spectrum");
    ev = es.eigenvalues().real();
  }
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

inline double sorted_multiset_distance(Eigen::VectorXd a, Eigen::VectorXd b) {
  std::sort(a.data(), a.data() + a.size());
  std::sort(b.data(), b.data() + b.size());
  return (a - b).cwiseAbs().maxCoeff();
}

// Greedy nearest matching for complex multisets (values well separated
// relative to the tolerances used in the tests).
inline double complex_multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < b.size(); ++i) {
      const double d = std::abs(x - b[i]);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    worst = std::max(worst, bd);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

// Index-by-index transcription of the border and corner formulas, 1-based as
// displayed; independent of the pad() implementation.
inline Matrix literal_pad(const Matrix& f, Index q1, Index q2, BoundaryCondition bc) {
  const Index n1 = f.rows(), n2 = f.cols();
  // fx(i1, i2) in 1-based coordinates over [1-q1, n1+q1] x [1-q2, n2+q2].
  Matrix out(n1 + 2 * q1, n2 + 2 * q2);
  const auto set = [&](Index i1, Index i2, double v) {
    out(i1 - 1 + q1, i2 - 1 + q2) = v;
  };
  const auto fov = [&](Index i1, Index i2) { return f(i1 - 1, i2 - 1); };
  for (Index i1 = 1; i1 <= n1; ++i1)
    for (Index i2 = 1; i2 <= n2; ++i2) set(i1, i2, fov(i1, i2));

  const auto wrap = [](Index i, Index n) { return ((i - 1) % n + n) % n + 1; };
  // Borders.
  for (Index i1 = 1; i1 <= n1; ++i1)
    for (Index i2 = 1; i2 <= q2; ++i2) {
      double left = 0.0, right = 0.0;
      switch (bc) {
        case BoundaryCondition::Zero: break;
        case BoundaryCondition::Periodic:
          left = fov(i1, wrap(1 - i2, n2));
          right = fov(i1, wrap(n2 + i2, n2));
          break;
        case BoundaryCondition::Reflective:
          left = fov(i1, i2);
          right = fov(i1, n2 + 1 - i2);
          break;
        case BoundaryCondition::AntiReflective:
          left = 2.0 * fov(i1, 1) - fov(i1, i2 + 1);
          right = 2.0 * fov(i1, n2) - fov(i1, n2 - i2);
          break;
      }
      set(i1, 1 - i2, left);
      set(i1, n2 + i2, right);
    }
  for (Index i1 = 1; i1 <= q1; ++i1)
    for (Index i2 = 1; i2 <= n2; ++i2) {
      double top = 0.0, bottom = 0.0;
      switch (bc) {
        case BoundaryCondition::Zero: break;
        case BoundaryCondition::Periodic:
          top = fov(wrap(1 - i1, n1), i2);
          bottom = fov(wrap(n1 + i1, n1), i2);
          break;
        case BoundaryCondition::Reflective:
          top = fov(i1, i2);
          bottom = fov(n1 + 1 - i1, i2);
          break;
        case BoundaryCondition::AntiReflective:
          top = 2.0 * fov(1, i2) - fov(i1 + 1, i2);
          bottom = 2.0 * fov(n1, i2) - fov(n1 - i1, i2);
          break;
      }
      set(1 - i1, i2, top);
      set(n1 + i1, i2, bottom);
    }
  // Corners.
  for (Index i1 = 1; i1 <= q1; ++i1)
    for (Index i2 = 1; i2 <= q2; ++i2) {
      double tl = 0.0, tr = 0.0, bl = 0.0, br = 0.0;
      switch (bc) {
        case BoundaryCondition::Zero: break;
        case BoundaryCondition::Periodic:
          tl = fov(wrap(1 - i1, n1), wrap(1 - i2, n2));
          tr = fov(wrap(1 - i1, n1), wrap(n2 + i2, n2));
          bl = fov(wrap(n1 + i1, n1), wrap(1 - i2, n2));
          br = fov(wrap(n1 + i1, n1), wrap(n2 + i2, n2));
          break;
        case BoundaryCondition::Reflective:
          tl = fov(i1, i2);
          tr = fov(i1, n2 + 1 - i2);
          bl = fov(n1 + 1 - i1, i2);
          br = fov(n1 + 1 - i1, n2 + 1 - i2);
          break;
        case BoundaryCondition::AntiReflective:
          tl = 4.0 * fov(1, 1) - 2.0 * fov(1, i2 + 1) - 2.0 * fov(i1 + 1, 1) +
               fov(i1 + 1, i2 + 1);
          tr = 4.0 * fov(1, n2) - 2.0 * fov(1, n2 - i2) - 2.0 * fov(i1 + 1, n2) +
               fov(i1 + 1, n2 - i2);
          bl = 4.0 * fov(n1, 1) - 2.0 * fov(n1, i2 + 1) - 2.0 * fov(n1 - i1, 1) +
               fov(n1 - i1, i2 + 1);
          br = 4.0 * fov(n1, n2) - 2.0 * fov(n1, n2 - i2) - 2.0 * fov(n1 - i1, n2) +
               fov(n1 - i1, n2 - i2);
          break;
      }
      set(1 - i1, 1 - i2, tl);
      set(1 - i1, n2 + i2, tr);
      set(n1 + i1, 1 - i2, bl);
      set(n1 + i1, n2 + i2, br);
    }
  return out;
}

inline const std::vector<BoundaryCondition>& all_bcs() {
  static const std::vector<BoundaryCondition> bcs = {
      BoundaryCondition::Zero, BoundaryCondition::Periodic,
      BoundaryCondition::Reflective, BoundaryCondition::AntiReflective};
  return bcs;
}

}  // namespace deblur::oracle
