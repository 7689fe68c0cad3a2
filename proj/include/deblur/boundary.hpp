#pragma once

#include <string>

#include "deblur/core.hpp"

namespace deblur {

enum class BoundaryCondition { Zero, Periodic, Reflective, AntiReflective };

inline const char* to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Zero: return "zero";
    case BoundaryCondition::Periodic: return "periodic";
    case BoundaryCondition::Reflective: return "reflective";
    case BoundaryCondition::AntiReflective: return "antireflective";
  }
  return "?";
}

inline BoundaryCondition bc_from_string(const std::string& s) {
  if (s == "zero") return BoundaryCondition::Zero;
  if (s == "periodic") return BoundaryCondition::Periodic;
  if (s == "reflective") return BoundaryCondition::Reflective;
  if (s == "antireflective") return BoundaryCondition::AntiReflective;
  throw std::invalid_argument("unknown boundary condition: " + s);
}

namespace detail {

// Extends one axis of a buffer whose interior occupies [q, q+n).
// Left rule: f_{1-i} for i=1..q; right rule: f_{n+i}.
template <typename Buf>
void extend_axis(Buf&& b, Index q, Index n, BoundaryCondition bc) {
  if (q == 0) return;
  switch (bc) {
    case BoundaryCondition::Zero:
      for (Index i = 1; i <= q; ++i) {
        b(q - i) = 0.0;
        b(q + n - 1 + i) = 0.0;
      }
      break;
    case BoundaryCondition::Periodic:
      for (Index i = 1; i <= q; ++i) {
        b(q - i) = b(q + ((n - i) % n + n) % n);
        b(q + n - 1 + i) = b(q + (i - 1) % n);
      }
      break;
    case BoundaryCondition::Reflective:
      // f_{1-i} = f_i, f_{n+i} = f_{n+1-i}
      for (Index i = 1; i <= q; ++i) {
        b(q - i) = b(q + i - 1);
        b(q + n - 1 + i) = b(q + n - i);
      }
      break;
    case BoundaryCondition::AntiReflective:
      // f_{1-i} = 2 f_1 - f_{1+i}, f_{n+i} = 2 f_n - f_{n-i}
      for (Index i = 1; i <= q; ++i) {
        b(q - i) = 2.0 * b(q) - b(q + i);
        b(q + n - 1 + i) = 2.0 * b(q + n - 1) - b(q + n - 1 - i);
      }
      break;
  }
}

inline void check_support(Index n1, Index n2, Index q1, Index q2,
                          BoundaryCondition bc) {
  require(n1 >= 1 && n2 >= 1, "pad: empty image");
  switch (bc) {
    case BoundaryCondition::Reflective:
      require(q1 <= n1 && q2 <= n2, "reflective support condition violated (q > n)");
      break;
    case BoundaryCondition::AntiReflective:
      // Axes the blur does not extend along are exempt from the condition.
      require((q1 == 0 || q1 <= n1 - 2) && (q2 == 0 || q2 <= n2 - 2),
              "anti-reflective support condition violated (q > n-2)");
      break;
    default:
      break;
  }
}

}  // namespace detail

/// Extends f to (n1+2q1) x (n2+2q2) with the boundary-condition frame: columns
/// first, then rows over the widened image, so corners receive the double
/// (anti-)reflection automatically.
inline Matrix pad(const Matrix& f, Index q1, Index q2, BoundaryCondition bc) {
  const Index n1 = f.rows(), n2 = f.cols();
  detail::check_support(n1, n2, q1, q2, bc);
  Matrix out = Matrix::Zero(n1 + 2 * q1, n2 + 2 * q2);
  out.block(q1, q2, n1, n2) = f;
  for (Index r = 0; r < n1; ++r) {
    auto row = out.row(q1 + r);
    detail::extend_axis([&row](Index j) -> double& { return row(j); }, q2, n2, bc);
  }
  for (Index c = 0; c < n2 + 2 * q2; ++c) {
    auto col = out.col(c);
    detail::extend_axis([&col](Index i) -> double& { return col(i); }, q1, n1, bc);
  }
  return out;
}

/// Drops a frame of width (q1, q2); inverse of pad on the interior.
inline Matrix crop(const Matrix& padded, Index q1, Index q2) {
  detail::require(padded.rows() > 2 * q1 && padded.cols() > 2 * q2,
                  "crop: frame larger than image");
  return padded.block(q1, q2, padded.rows() - 2 * q1, padded.cols() - 2 * q2);
}

}  // namespace deblur
