#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

#include "deblur/core.hpp"

namespace deblur {

enum class TransformKind { Dft, CosineIII, SineI, AntiReflective, AntiReflectiveInverse };

namespace detail {

// FFTW planning is not thread-safe and plans execute on their own buffers,
// so both planning and execution run under one process-wide lock.
inline std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

struct R2rPlan {
  fftw_plan plan = nullptr;
  double* in = nullptr;
  double* out = nullptr;
  ~R2rPlan() {
    if (plan) fftw_destroy_plan(plan);
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

inline void r2r_run(fftw_r2r_kind kind, const double* src, double* dst, Index n) {
  std::lock_guard<std::mutex> lock(fftw_mutex());
  static std::map<std::pair<int, Index>, std::unique_ptr<R2rPlan>> cache;
  auto& slot = cache[{static_cast<int>(kind), n}];
  if (!slot) {
    slot = std::make_unique<R2rPlan>();
    slot->in = fftw_alloc_real(static_cast<size_t>(n));
    slot->out = fftw_alloc_real(static_cast<size_t>(n));
    slot->plan = fftw_plan_r2r_1d(static_cast<int>(n), slot->in, slot->out, kind,
                                  FFTW_ESTIMATE);
  }
  std::copy(src, src + n, slot->in);
  fftw_execute(slot->plan);
  std::copy(slot->out, slot->out + n, dst);
}

struct DftPlan {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  ~DftPlan() {
    if (plan) fftw_destroy_plan(plan);
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

inline void dft2_run(int sign, const Complex* src, Complex* dst, Index n1, Index n2) {
  std::lock_guard<std::mutex> lock(fftw_mutex());
  static std::map<std::tuple<int, Index, Index>, std::unique_ptr<DftPlan>> cache;
  auto& slot = cache[{sign, n1, n2}];
  const size_t total = static_cast<size_t>(n1 * n2);
  if (!slot) {
    slot = std::make_unique<DftPlan>();
    slot->in = fftw_alloc_complex(total);
    slot->out = fftw_alloc_complex(total);
    slot->plan = fftw_plan_dft_2d(static_cast<int>(n1), static_cast<int>(n2),
                                  slot->in, slot->out, sign, FFTW_ESTIMATE);
  }
  std::copy(src, src + total, reinterpret_cast<Complex*>(slot->in));
  fftw_execute(slot->plan);
  std::copy(reinterpret_cast<Complex*>(slot->out),
            reinterpret_cast<Complex*>(slot->out) + total, dst);
}

}  // namespace detail

/// R_m v, with R_m the orthogonal cosine transform
/// R_m(s,t) = sqrt((2 - delta_{s,1})/m) cos((s-1)(t-1/2)pi/m).
inline Vector cosine3_forward(const Vector& v) {
  const Index m = v.size();
  detail::require(m >= 1, "cosine3_forward: empty input");
  Vector y(m);
  detail::r2r_run(FFTW_REDFT10, v.data(), y.data(), m);
  const double w0 = 0.5 * std::sqrt(1.0 / static_cast<double>(m));
  const double w = 0.5 * std::sqrt(2.0 / static_cast<double>(m));
  y(0) *= w0;
  y.tail(m - 1) *= w;
  return y;
}

/// R_m^T v (the inverse: R_m is orthogonal).
inline Vector cosine3_inverse(const Vector& v) {
  const Index m = v.size();
  detail::require(m >= 1, "cosine3_inverse: empty input");
  Vector x(m);
  x(0) = std::sqrt(1.0 / static_cast<double>(m)) * v(0);
  if (m > 1) x.tail(m - 1) = 0.5 * std::sqrt(2.0 / static_cast<double>(m)) * v.tail(m - 1);
  Vector y(m);
  detail::r2r_run(FFTW_REDFT01, x.data(), y.data(), m);
  return y;
}

/// Q_m v, with Q_m(s,t) = sqrt(2/(m+1)) sin(s t pi/(m+1)); Q_m is symmetric
/// and involutory, so it is its own inverse.
inline Vector sine1_forward(const Vector& v) {
  const Index m = v.size();
  detail::require(m >= 1, "sine1_forward: empty input");
  Vector y(m);
  detail::r2r_run(FFTW_RODFT00, v.data(), y.data(), m);
  y *= 0.5 * std::sqrt(2.0 / static_cast<double>(m + 1));
  return y;
}

/// The anti-reflective transform pair of size m:
///   T_m = [ 1/a   0    0  ]        Ttilde_m = [  a    0     0 ]
///         [ p/a  Q_{m-2} Jp/a ]               [-Qp  Q_{m-2} -QJp ]
///         [ 0     0   1/a  ]                  [  0    0     a ]
/// with p_j = 1 - j/(m-1) and a chosen so the first/last columns of T_m have
/// unit norm.
struct ArTransform1D {
  Index m = 0;
  double alpha_m = 1.0;
  Vector p;  // length m-2
};

inline ArTransform1D make_ar_transform(Index m) {
  detail::require(m >= 3, "ArTransform1D: size must be at least 3");
  ArTransform1D t;
  t.m = m;
  t.p = Vector(m - 2);
  for (Index j = 1; j <= m - 2; ++j)
    t.p(j - 1) = 1.0 - static_cast<double>(j) / static_cast<double>(m - 1);
  t.alpha_m = std::sqrt(1.0 + t.p.squaredNorm());
  return t;
}

/// w = T_m v: sine transform on the interior plus the rank-2 ramp correction
/// carried by the first/last entries.
inline Vector ar_forward(const ArTransform1D& t, const Vector& v) {
  detail::require(v.size() == t.m, "ar_forward: size mismatch");
  const Index m = t.m;
  const double inv_a = 1.0 / t.alpha_m;
  Vector w(m);
  w(0) = inv_a * v(0);
  w(m - 1) = inv_a * v(m - 1);
  Vector interior = sine1_forward(v.segment(1, m - 2));
  interior += (inv_a * v(0)) * t.p;
  interior += (inv_a * v(m - 1)) * t.p.reverse();
  w.segment(1, m - 2) = interior;
  return w;
}

/// u = Ttilde_m v = T_m^{-1} v.
inline Vector ar_inverse(const ArTransform1D& t, const Vector& v) {
  detail::require(v.size() == t.m, "ar_inverse: size mismatch");
  const Index m = t.m;
  Vector u(m);
  u(0) = t.alpha_m * v(0);
  u(m - 1) = t.alpha_m * v(m - 1);
  Vector interior = v.segment(1, m - 2) - v(0) * t.p;
  interior -= v(m - 1) * t.p.reverse();
  u.segment(1, m - 2) = sine1_forward(interior);
  return u;
}

namespace detail {

// Applies a 1D kernel down every column, then along every row: the Kronecker
// action K_{n1} (x) K_{n2} on the row-major vec.
template <typename Kernel1, typename Kernel2>
Matrix tensor_map(const Matrix& x, Kernel1&& col_kernel, Kernel2&& row_kernel) {
  Matrix y(x.rows(), x.cols());
  Vector buf;
  for (Index c = 0; c < x.cols(); ++c) {
    buf = x.col(c);
    y.col(c) = col_kernel(buf);
  }
  for (Index r = 0; r < y.rows(); ++r) {
    buf = y.row(r);
    y.row(r) = row_kernel(buf).transpose();
  }
  return y;
}

}  // namespace detail

/// 2D separable transform for the real kinds; the Dft kind is complex-valued,
/// use dft2_forward/dft2_inverse instead.
inline Matrix tensor_apply(TransformKind kind, const Matrix& x) {
  switch (kind) {
    case TransformKind::CosineIII:
      return detail::tensor_map(x, [](const Vector& v) { return cosine3_forward(v); },
                                [](const Vector& v) { return cosine3_forward(v); });
    case TransformKind::SineI:
      return detail::tensor_map(x, [](const Vector& v) { return sine1_forward(v); },
                                [](const Vector& v) { return sine1_forward(v); });
    case TransformKind::AntiReflective: {
      detail::require(x.rows() >= 3 && x.cols() >= 3,
                      "tensor_apply: anti-reflective transform needs sizes >= 3");
      const ArTransform1D t1 = make_ar_transform(x.rows());
      const ArTransform1D t2 = make_ar_transform(x.cols());
      return detail::tensor_map(x, [&](const Vector& v) { return ar_forward(t1, v); },
                                [&](const Vector& v) { return ar_forward(t2, v); });
    }
    case TransformKind::AntiReflectiveInverse: {
      detail::require(x.rows() >= 3 && x.cols() >= 3,
                      "tensor_apply: anti-reflective transform needs sizes >= 3");
      const ArTransform1D t1 = make_ar_transform(x.rows());
      const ArTransform1D t2 = make_ar_transform(x.cols());
      return detail::tensor_map(x, [&](const Vector& v) { return ar_inverse(t1, v); },
                                [&](const Vector& v) { return ar_inverse(t2, v); });
    }
    case TransformKind::Dft:
      throw std::invalid_argument("tensor_apply: Dft is complex, use dft2_forward");
  }
  throw std::invalid_argument("tensor_apply: unknown kind");
}

/// Unnormalized 2D DFT, X_k = sum_j x_j exp(-2 pi i <k, j/n>).
inline CMatrix dft2_forward(const CMatrix& x) {
  CMatrix y(x.rows(), x.cols());
  detail::dft2_run(FFTW_FORWARD, x.data(), y.data(), x.rows(), x.cols());
  return y;
}

inline CMatrix dft2_forward(const Matrix& x) {
  return dft2_forward(CMatrix(x.cast<Complex>()));
}

/// Inverse 2D DFT with the 1/(n1 n2) normalization.
inline CMatrix dft2_inverse(const CMatrix& x) {
  CMatrix y(x.rows(), x.cols());
  detail::dft2_run(FFTW_BACKWARD, x.data(), y.data(), x.rows(), x.cols());
  y /= static_cast<double>(x.rows() * x.cols());
  return y;
}

inline Matrix dft2_inverse_real(const CMatrix& x) {
  return dft2_inverse(x).real();
}

}  // namespace deblur
