#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

#include "ppf/errors.hpp"

namespace ppf {

inline constexpr std::size_t kMaxDim = 3;

/// Small fixed-capacity vector for positions and wavenumbers in d <= 3.
class Vec {
 public:
  Vec() = default;

  explicit Vec(std::size_t dim) : dim_(dim) {
    if (dim > kMaxDim) throw DimensionError("Vec: dimension exceeds 3");
  }

  Vec(std::initializer_list<double> values) : dim_(values.size()) {
    if (dim_ > kMaxDim) throw DimensionError("Vec: dimension exceeds 3");
    std::size_t i = 0;
    for (double v : values) c_[i++] = v;
  }

  explicit Vec(std::span<const double> values) : dim_(values.size()) {
    if (dim_ > kMaxDim) throw DimensionError("Vec: dimension exceeds 3");
    for (std::size_t i = 0; i < dim_; ++i) c_[i] = values[i];
  }

  static Vec filled(std::size_t dim, double value) {
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v.c_[i] = value;
    return v;
  }

  std::size_t size() const noexcept { return dim_; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }

  const double* begin() const noexcept { return c_.data(); }
  const double* end() const noexcept { return c_.data() + dim_; }
  std::span<const double> values() const noexcept { return {c_.data(), dim_}; }

  Vec& operator+=(const Vec& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
  friend Vec operator*(Vec a, double s) noexcept { return a *= s; }
  friend Vec operator*(double s, Vec a) noexcept { return a *= s; }
  friend Vec operator-(Vec a) noexcept { return a *= -1.0; }

  friend bool operator==(const Vec& a, const Vec& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

inline double dot(const Vec& a, const Vec& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_squared(const Vec& a) noexcept { return dot(a, a); }
inline double norm(const Vec& a) noexcept { return std::sqrt(norm_squared(a)); }

}  // namespace ppf
