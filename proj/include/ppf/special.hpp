#pragma once

namespace ppf::special {

/// Normalized sinc: sin(pi x) / (pi x), with sinc(0) = 1.
///
/// The normalized convention makes 2 l sinc(2 l u) equal the integral of
/// exp(2 pi i k u) over k in [-l, l]. The unnormalized sin(x)/x would scale
/// every box impulse response by pi in its argument.
double sinc(double x) noexcept;

/// Bessel function of the first kind, J_1(x), for x >= 0.
///
/// Ascending power series for x < 12 and the Hankel asymptotic expansion
/// (summed to its smallest term) beyond. Absolute error is below 1e-8 on
/// [0, 500]; in practice it is near 1e-12.
double bessel_j1(double x);

/// J_{1/2}(x) = sqrt(2 / (pi x)) sin(x).
double bessel_j_half(double x);

/// J_{3/2}(x) = sqrt(2 / (pi x)) (sin(x) / x - cos(x)); ascending series near 0
/// where the closed form cancels.
double bessel_j_three_halves(double x);

/// J_nu(x) for nu in {1/2, 1, 3/2}, which are the orders J_{d/2} needed for
/// balls in d = 1, 2, 3. Throws DomainError for any other order or for x < 0.
double bessel_j(double order, double x);

}  // namespace ppf::special
