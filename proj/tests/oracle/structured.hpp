#pragma once

// Literal assemblies of the displayed block structures: the generic 1D/2D
// anti-reflective matrices, the symmetric two-level anti-reflective form, and
// the DCT-III / tau Toeplitz-plus-Hankel forms. These builders take raw tap
// arrays (not necessarily normalized or nonnegative) so they can also serve
// as algebra bases for the Frobenius projection.

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "deblur/core.hpp"
#include "deblur/psf.hpp"

namespace deblur::oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// 1D masks are vectors of length 2q+1 with the center at index q;
// tap(k) below reads offset k in [-q, q].
struct Mask1D {
  VectorXd taps;
  Index q = 0;

  explicit Mask1D(VectorXd t) : taps(std::move(t)) {
    if (taps.size() % 2 == 0) throw std::invalid_argument("Mask1D: even length");
    q = (taps.size() - 1) / 2;
  }
  double tap(Index k) const { return (k < -q || k > q) ? 0.0 : taps(q + k); }
};

// 2D masks: (2q1+1) x (2q2+1), center at (q1, q2).
struct Mask2D {
  MatrixXd taps;
  Index q1 = 0, q2 = 0;

  explicit Mask2D(MatrixXd t) : taps(std::move(t)) {
    if (taps.rows() % 2 == 0 || taps.cols() % 2 == 0)
      throw std::invalid_argument("Mask2D: even dimensions");
    q1 = (taps.rows() - 1) / 2;
    q2 = (taps.cols() - 1) / 2;
  }
  double tap(Index k1, Index k2) const {
    return (k1 < -q1 || k1 > q1 || k2 < -q2 || k2 > q2) ? 0.0 : taps(q1 + k1, q2 + k2);
  }
  Mask1D row(Index k1) const {
    VectorXd r(2 * q2 + 1);
    for (Index k2 = -q2; k2 <= q2; ++k2) r(q2 + k2) = tap(k1, k2);
    return Mask1D(std::move(r));
  }
};

inline Mask2D mask_of(const Psf& p) { return Mask2D(MatrixXd(p.taps())); }

// Toeplitz part of every structure: entry (i,j) = h_{i-j}.
inline MatrixXd toeplitz(const Mask1D& h, Index m) {
  MatrixXd t = MatrixXd::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) t(i, j) = h.tap(i - j);
  return t;
}

// tau matrix: Toeplitz(h) - Hankel(sigma^2(h), J sigma^2(h));
// entry (i,j) -= h_{i+j+2} + h_{2m - i - j} (0-based).
inline MatrixXd tau_1d(const Mask1D& h, Index m) {
  MatrixXd a = toeplitz(h, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) a(i, j) -= h.tap(i + j + 2) + h.tap(2 * m - i - j);
  return a;
}

// DCT-III algebra matrix: Toeplitz(h) + Hankel(sigma(h), J sigma(h));
// entry (i,j) += h_{i+j+1} + h_{2m-1-i-j} (0-based). Assumes h symmetric.
inline MatrixXd dct3_1d(const Mask1D& h, Index m) {
  MatrixXd a = toeplitz(h, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) a(i, j) += h.tap(i + j + 1) + h.tap(2 * m - 1 - i - j);
  return a;
}

namespace detail {

// Places a block-structured matrix given a per-(I,J) block callback.
template <typename BlockFn>
MatrixXd assemble_blocks(Index n_blocks, Index block, BlockFn&& fn) {
  MatrixXd a = MatrixXd::Zero(n_blocks * block, n_blocks * block);
  for (Index i = 0; i < n_blocks; ++i)
    for (Index j = 0; j < n_blocks; ++j) {
      MatrixXd b = fn(i, j);
      if (b.size() != 0) a.block(i * block, j * block, block, block) = b;
    }
  return a;
}

}  // namespace detail

// Two-level DCT-III structure: block Toeplitz+Hankel whose blocks are the
// unilevel DCT-III matrices of the mask rows. Assumes strong symmetry.
inline MatrixXd dct3_2d(const Mask2D& h, Index n1, Index n2) {
  std::vector<MatrixXd> v(static_cast<size_t>(h.q1) + 1);
  for (Index k = 0; k <= h.q1; ++k) v[k] = dct3_1d(h.row(k), n2);
  const auto vk = [&](Index k) -> MatrixXd {
    return (k >= 0 && k <= h.q1) ? v[k] : MatrixXd();
  };
  return detail::assemble_blocks(n1, n2, [&](Index i, Index j) {
    MatrixXd b = MatrixXd::Zero(n2, n2);
    if (MatrixXd t = vk(std::abs(i - j)); t.size()) b += t;
    if (MatrixXd t = vk(i + j + 1); t.size()) b += t;
    if (MatrixXd t = vk(2 * n1 - 1 - i - j); t.size()) b += t;
    return b;
  });
}

// Two-level tau structure (minus double-shifted Hankels at the block level).
inline MatrixXd tau_2d(const Mask2D& h, Index n1, Index n2) {
  std::vector<MatrixXd> v(static_cast<size_t>(h.q1) + 1);
  for (Index k = 0; k <= h.q1; ++k) v[k] = tau_1d(h.row(k), n2);
  const auto vk = [&](Index k) -> MatrixXd {
    return (k >= 0 && k <= h.q1) ? v[k] : MatrixXd();
  };
  return detail::assemble_blocks(n1, n2, [&](Index i, Index j) {
    MatrixXd b = MatrixXd::Zero(n2, n2);
    if (MatrixXd t = vk(std::abs(i - j)); t.size()) b += t;
    if (MatrixXd t = vk(i + j + 2); t.size()) b -= t;
    if (MatrixXd t = vk(2 * n1 - i - j); t.size()) b -= t;
    return b;
  });
}

// Generic 1D anti-reflective matrix: Toeplitz + Hankel corrections in the
// interior, ramp-weighted first/last columns v_k / w_k and the asymmetry row
// u on the borders.
inline MatrixXd ar_1d_generic(const Mask1D& h, Index n) {
  if (h.q > n - 2) throw std::invalid_argument("ar_1d_generic: support violation");
  MatrixXd a = MatrixXd::Zero(n, n);
  // v_k = h_k + 2 sum_{j>k} h_j ; w_k mirrors with negative offsets.
  for (Index k = 0; k <= h.q; ++k) {
    double v = h.tap(k), w = h.tap(-k);
    for (Index j = k + 1; j <= h.q; ++j) {
      v += 2.0 * h.tap(j);
      w += 2.0 * h.tap(-j);
    }
    a(k, 0) = v;
    a(n - 1 - k, n - 1) = w;
  }
  // u^T = [h_{-1}-h_1, ..., h_{-q}-h_q, 0...] across columns 1..n-2,
  // and -(Ju)^T across the last row.
  for (Index k = 1; k <= h.q; ++k) {
    a(0, k) = h.tap(-k) - h.tap(k);
    a(n - 1, n - 1 - k) = h.tap(k) - h.tap(-k);
  }
  // B = T - H_TL([h_2..h_q]) - H_BR([h_{-2}..h_{-q}]) on the interior.
  const Index m = n - 2;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      a(1 + i, 1 + j) = h.tap(i - j) - h.tap(i + j + 2) - h.tap(-(2 * m - i - j));
  return a;
}

// Generic 2D anti-reflective matrix: the same border/interior layout at the
// block level, with blocks the generic 1D matrices of the mask rows.
inline MatrixXd ar_2d_generic(const Mask2D& h, Index n1, Index n2) {
  if (h.q1 > n1 - 2 || h.q2 > n2 - 2)
    throw std::invalid_argument("ar_2d_generic: support violation");
  std::vector<MatrixXd> rows(static_cast<size_t>(2 * h.q1) + 1);
  for (Index k = -h.q1; k <= h.q1; ++k) rows[h.q1 + k] = ar_1d_generic(h.row(k), n2);
  const auto hk = [&](Index k) -> MatrixXd {
    return (k >= -h.q1 && k <= h.q1) ? rows[h.q1 + k] : MatrixXd::Zero(n2, n2);
  };
  return detail::assemble_blocks(n1, n2, [&](Index bi, Index bj) -> MatrixXd {
    const Index m = n1 - 2;
    if (bj == 0) {                       // first block column: V_k
      if (bi > h.q1) return MatrixXd();  // zero
      MatrixXd v = hk(bi);
      for (Index j = bi + 1; j <= h.q1; ++j) v += 2.0 * hk(j);
      return v;
    }
    if (bj == n1 - 1) {  // last block column: W_k bottom-up
      const Index k = n1 - 1 - bi;
      if (k > h.q1) return MatrixXd();
      MatrixXd w = hk(-k);
      for (Index j = k + 1; j <= h.q1; ++j) w += 2.0 * hk(-j);
      return w;
    }
    if (bi == 0) return MatrixXd(hk(-bj) - hk(bj));                    // U row
    if (bi == n1 - 1) {                                                // -(JU) row
      const Index k = n1 - 1 - bj;
      return MatrixXd(hk(k) - hk(-k));
    }
    const Index i = bi - 1, j = bj - 1;  // interior block B
    return MatrixXd(hk(i - j) - hk(i + j + 2) - hk(-(2 * m - i - j)));
  });
}

// Symmetric two-level anti-reflective structure assembled from the z / Z rank
// corrections: interiors are tau matrices, borders carry the condensed sums
// z_{i1,k} = 2 sum_{t=k}^{q2} h_{i1,t} and Z_k = 2 sum_{t=k}^{q1} Htilde_t.
inline MatrixXd ar_2d_symmetric(const Mask2D& h, Index n1, Index n2) {
  if (h.q1 > n1 - 2 || h.q2 > n2 - 2)
    throw std::invalid_argument("ar_2d_symmetric: support violation");
  // Htilde_{i1}: unilevel anti-reflective block of the (symmetric) row i1.
  std::vector<MatrixXd> ht(static_cast<size_t>(h.q1) + 1);
  for (Index i1 = 0; i1 <= h.q1; ++i1) {
    MatrixXd b = MatrixXd::Zero(n2, n2);
    for (Index k = 0; k <= h.q2; ++k) {
      double zk = 0.0;  // z_{i1,k+1}
      for (Index t = k + 1; t <= h.q2; ++t) zk += 2.0 * h.tap(i1, t);
      b(k, 0) = h.tap(i1, k) + zk;
      b(n2 - 1 - k, n2 - 1) = h.tap(i1, k) + zk;
    }
    b.block(1, 1, n2 - 2, n2 - 2) = tau_1d(h.row(i1), n2 - 2);
    ht[i1] = std::move(b);
  }
  const auto htk = [&](Index k) -> MatrixXd {
    return (k >= 0 && k <= h.q1) ? ht[k] : MatrixXd::Zero(n2, n2);
  };
  return detail::assemble_blocks(n1, n2, [&](Index bi, Index bj) -> MatrixXd {
    const Index m = n1 - 2;
    if (bj == 0 || bj == n1 - 1) {
      const Index k = (bj == 0) ? bi : n1 - 1 - bi;
      if (k > h.q1) return MatrixXd();
      MatrixXd v = htk(k);  // Htilde_k + Z_{k+1}
      for (Index t = k + 1; t <= h.q1; ++t) v += 2.0 * htk(t);
      return v;
    }
    if (bi == 0 || bi == n1 - 1) return MatrixXd();  // zero border rows
    const Index i = bi - 1, j = bj - 1;  // block tau over the Htilde blocks
    return MatrixXd(htk(std::abs(i - j)) - htk(i + j + 2) - htk(2 * m - i - j));
  });
}

}  // namespace deblur::oracle
