#include "ppf/special.hpp"

#include <cmath>
#include <numbers>

#include "ppf/errors.hpp"

namespace ppf::special {
namespace {

constexpr double kPi = std::numbers::pi;

// Below this the power series of J_1 is used. At x = 12 the largest series
// term is ~4e3, so rounding stays near 1e-12, while the asymptotic series'
// smallest term is already ~1e-11.
constexpr double kJ1SeriesLimit = 12.0;

double j1_series(double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = half;  // k = 0: (x/2) / (0! 1!)
  double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Hankel expansion J_1(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - 3 pi / 4, with mu = 4 nu^2 = 4.
double j1_asymptotic(double x) {
  constexpr double mu = 4.0;
  const double eight_x = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  // a_k = prod_{m=1..k} (mu - (2m-1)^2) / (k! (8x)^k); P takes even k with
  // alternating signs, Q the odd k.
  double a = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (static_cast<double>(k) * eight_x);
    const double mag = std::abs(a);
    if (mag > last) break;  // series has started to diverge
    last = mag;
    switch (k % 4) {
      case 1: q += a; break;
      case 2: p -= a; break;
      case 3: q -= a; break;
      case 0: p += a; break;
    }
    if (mag < 1e-17) break;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double cos_chi = (s - c) * std::numbers::sqrt2 * 0.5;
  const double sin_chi = -(s + c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double sinc(double x) noexcept {
  const double px = kPi * x;
  if (std::abs(px) < 1e-8) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

double bessel_j1(double x) {
  if (x < 0.0) throw DomainError("bessel_j1: argument must be nonnegative");
  if (x < kJ1SeriesLimit) return j1_series(x);
  return j1_asymptotic(x);
}

double bessel_j_half(double x) {
  if (x < 0.0) throw DomainError("bessel_j_half: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  return std::sqrt(2.0 / (kPi * x)) * std::sin(x);
}

double bessel_j_three_halves(double x) {
  if (x < 0.0) throw DomainError("bessel_j_three_halves: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < 1.0) {
    // sum_k (-1)^k (x/2)^{2k+3/2} / (k! Gamma(k + 5/2)), Gamma(5/2) = 3 sqrt(pi) / 4
    const double half = 0.5 * x;
    const double q = -half * half;
    double term = std::pow(half, 1.5) / (0.75 * std::sqrt(kPi));
    double sum = term;
    for (int k = 1; k < 30; ++k) {
      term *= q / (static_cast<double>(k) * (k + 1.5));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
}

double bessel_j(double order, double x) {
  if (order == 0.5) return bessel_j_half(x);
  if (order == 1.0) return bessel_j1(x);
  if (order == 1.5) return bessel_j_three_halves(x);
  throw DomainError("bessel_j: only orders 1/2, 1 and 3/2 are supported");
}

}  // namespace ppf::special
