#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace deblur {

using Index = Eigen::Index;
using Scalar = double;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Images and eigenvalue grids use row-major storage so that vec(X) taken
// row-wise from the top-left corner is just the underlying buffer.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace detail

/// Row-major flattening of a matrix (the vec convention used throughout).
inline Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  detail::require(v.size() == rows * cols, "unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace deblur
