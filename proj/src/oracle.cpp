#include "ppf/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ppf/errors.hpp"

namespace ppf::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

std::size_t lattice_size(std::size_t n, std::size_t d) {
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= n;
  return total;
}

void unflatten(std::size_t idx, std::size_t n, std::size_t d, std::size_t* out) {
  for (std::size_t j = 0; j < d; ++j) {
    out[j] = idx % n;
    idx /= n;
  }
}

void check_coverage(const WavenumberRegion& region, const Vec& half) {
  const std::size_t d = region.dimension();
  const std::size_t samples = d == 1 ? 1 : d == 2 ? 4096 : 256;
  for (std::size_t face = 0; face < d; ++face) {
    for (double sign : {-1.0, 1.0}) {
      const std::size_t count = lattice_size(samples, d - 1);
      std::size_t idx_buf[3] = {0, 0, 0};
      for (std::size_t s = 0; s < count; ++s) {
        unflatten(s, samples, d - 1, idx_buf);
        Vec k(d);
        std::size_t t = 0;
        for (std::size_t j = 0; j < d; ++j) {
          if (j == face) {
            k[j] = sign * half[j] * (1.0 + 1e-9);
          } else {
            k[j] = -half[j] + (idx_buf[t++] + 0.5) * 2.0 * half[j] / static_cast<double>(samples);
          }
        }
        if (transfer_indicator(region, k) == 1)
          throw CoverageError("quadrature_impulse: region extends beyond the bounding box");
      }
    }
  }
}

}  // namespace

QuadratureRule::QuadratureRule(const WavenumberRegion& region, const QuadratureSpec& spec)
    : dim_(region.dimension()), n_(spec.nodes_per_axis), m_(spec.boundary_subdivision), half_(spec.box_halfwidths) {
  const std::size_t d = dim_;
  if (half_.size() != d) throw DimensionError("quadrature_impulse: dimension mismatch");
  if (n_ < 64) throw DomainError("quadrature_impulse: nodes_per_axis must be >= 64");
  if (m_ == 0) m_ = d <= 2 ? 32 : 6;
  check_coverage(region, half_);

  const std::size_t n = n_, m = m_;
  const std::size_t total = lattice_size(n, d);
  double step[3] = {0, 0, 0};
  for (std::size_t j = 0; j < d; ++j) {
    step[j] = 2.0 * half_[j] / static_cast<double>(n);
    cell_ *= step[j];
  }

  std::vector<char> member(total);
  std::size_t idx[3] = {0, 0, 0};
  for (std::size_t c = 0; c < total; ++c) {
    unflatten(c, n, d, idx);
    Vec k(d);
    for (std::size_t j = 0; j < d; ++j) k[j] = -half_[j] + (static_cast<double>(idx[j]) + 0.5) * step[j];
    member[c] = static_cast<char>(transfer_indicator(region, k));
  }

  // A cell straddles the boundary of K when its centre and 2^d corners do not
  // all agree on membership.
  std::vector<char> corner;
  if (m > 1) {
    const std::size_t nc = n + 1;
    corner.resize(lattice_size(nc, d));
    for (std::size_t c = 0; c < corner.size(); ++c) {
      unflatten(c, nc, d, idx);
      Vec k(d);
      for (std::size_t j = 0; j < d; ++j) k[j] = -half_[j] + static_cast<double>(idx[j]) * step[j];
      corner[c] = static_cast<char>(transfer_indicator(region, k));
    }
  }
  auto is_boundary_cell = [&](std::size_t c) {
    if (m == 1) return false;
    unflatten(c, n, d, idx);
    const std::size_t corners = lattice_size(2, d);
    std::size_t off[3];
    for (std::size_t s = 0; s < corners; ++s) {
      unflatten(s, 2, d, off);
      std::size_t other = 0, stride = 1;
      for (std::size_t j = 0; j < d; ++j) {
        other += (idx[j] + off[j]) * stride;
        stride *= n + 1;
      }
      if (corner[other] != member[c]) return true;
    }
    return false;
  };

  const std::size_t sub_total = lattice_size(m, d);
  for (std::size_t c = 0; c < total; ++c) {
    if (is_boundary_cell(c)) {
      unflatten(c, n, d, idx);
      std::size_t sidx[3] = {0, 0, 0};
      for (std::size_t s = 0; s < sub_total; ++s) {
        unflatten(s, m, d, sidx);
        Vec k(d);
        std::array<std::uint32_t, 3> fine{0, 0, 0};
        for (std::size_t j = 0; j < d; ++j) {
          fine[j] = static_cast<std::uint32_t>(idx[j] * m + sidx[j]);
          k[j] = -half_[j] + (static_cast<double>(fine[j]) + 0.5) * step[j] / static_cast<double>(m);
        }
        if (transfer_indicator(region, k) == 1) parts_.push_back(fine);
      }
      continue;
    }
    if (!member[c]) continue;
    unflatten(c, n, d, idx);
    whole_.push_back({static_cast<std::uint32_t>(idx[0]), static_cast<std::uint32_t>(idx[1]),
                      static_cast<std::uint32_t>(idx[2])});
  }
}

double QuadratureRule::evaluate(const Vec& u) const {
  const std::size_t d = dim_;
  if (u.size() != d) throw DimensionError("quadrature_impulse: dimension mismatch");
  // Per-axis phasors exp(2 pi i k_j u_j) on the coarse and fine lattices;
  // unused axes hold a single unit entry.
  std::vector<std::complex<double>> coarse[3], fine[3];
  for (std::size_t j = 0; j < 3; ++j) {
    if (j >= d) {
      coarse[j].assign(1, 1.0);
      fine[j].assign(1, 1.0);
      continue;
    }
    const double step = 2.0 * half_[j] / static_cast<double>(n_);
    coarse[j].resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      coarse[j][i] = std::polar(1.0, 2.0 * kPi * (-half_[j] + (double(i) + 0.5) * step) * u[j]);
    fine[j].resize(n_ * m_);
    for (std::size_t i = 0; i < n_ * m_; ++i)
      fine[j][i] = std::polar(1.0, 2.0 * kPi * (-half_[j] + (double(i) + 0.5) * step / double(m_)) * u[j]);
  }
  std::complex<double> whole = 0.0, parts = 0.0;
  for (const auto& c : whole_) whole += coarse[0][c[0]] * coarse[1][c[1]] * coarse[2][c[2]];
  for (const auto& c : parts_) parts += fine[0][c[0]] * fine[1][c[1]] * fine[2][c[2]];
  const std::complex<double> sum = cell_ * whole + cell_ / static_cast<double>(lattice_size(m_, d)) * parts;
  if (std::abs(sum.imag()) > 1e-8)
    throw Error("quadrature_impulse: imaginary part does not vanish; region or box is not symmetric");
  return sum.real();
}

double quadrature_impulse(const WavenumberRegion& region, const Vec& u, const QuadratureSpec& spec) {
  if (u.size() != region.dimension()) throw DimensionError("quadrature_impulse: dimension mismatch");
  return QuadratureRule(region, spec).evaluate(u);
}

double bessel_series(double order, double x, int terms) {
  using boost::multiprecision::cpp_bin_float_50;
  if (order != 0.5 && order != 1.0 && order != 1.5)
    throw DomainError("bessel_series: only orders 1/2, 1 and 3/2 are supported");
  if (x < 0.0 || x > 30.0) throw RangeError("bessel_series: x must lie in [0, 30]");
  if (terms < 40) throw DomainError("bessel_series: at least 40 terms are required");
  if (x == 0.0) return 0.0;

  const cpp_bin_float_50 nu = order;
  const cpp_bin_float_50 half = cpp_bin_float_50(x) / 2;
  const cpp_bin_float_50 q = -half * half;
  // k = 0 term: (x/2)^nu / Gamma(nu + 1)
  cpp_bin_float_50 term = pow(half, nu) / boost::multiprecision::tgamma(nu + 1);
  cpp_bin_float_50 sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= q / (cpp_bin_float_50(k) * (nu + k));
    sum += term;
  }
  return static_cast<double>(sum);
}

double thomas_spectrum(double parent_intensity, double mean_offspring, double sigma, double k_norm) {
  if (!(parent_intensity > 0.0) || !(mean_offspring > 0.0) || !(sigma > 0.0))
    throw DomainError("thomas_spectrum: parameters must be positive");
  const double lambda = parent_intensity * mean_offspring;
  return lambda * (1.0 + mean_offspring * std::exp(-4.0 * kPi * kPi * sigma * sigma * k_norm * k_norm));
}

}  // namespace ppf::oracle
