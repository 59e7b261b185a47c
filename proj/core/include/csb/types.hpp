// SPDX-License-Identifier: Apache-2.0
//
// Basic numeric types shared by every module: complex scalars, a small dense
// complex matrix and the error hierarchy used across the library.

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csb {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg2rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) noexcept { return rad * 180.0 / kPi; }

// Non-negative remainder, valid for negative a.
constexpr int mod(int a, int n) noexcept {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

/// Invalid configuration or argument supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A geometric quantity that is undefined (point behind the array, origin).
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No permissible trajectory exists for an attack instance.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read or write an artifact on disk.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix. Row index k runs over the elevation
/// dimension of the array, column index l over the azimuth dimension.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols, cplx fill = {})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) throw ConfigError("CMatrix: dimensions must be positive");
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  cplx& operator()(int k, int l) noexcept { return data_[index(k, l)]; }
  const cplx& operator()(int k, int l) const noexcept { return data_[index(k, l)]; }

  std::span<cplx> flat() noexcept { return data_; }
  std::span<const cplx> flat() const noexcept { return data_; }

  double frobenius_norm() const;
  bool same_shape(const CMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t index(int k, int l) const noexcept {
    return static_cast<std::size_t>(k) * cols_ + l;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

}  // namespace csb
