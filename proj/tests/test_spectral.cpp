#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ppf/errors.hpp"
#include "ppf/oracle.hpp"
#include "ppf/simulate.hpp"
#include "ppf/spectral.hpp"
#include "support.hpp"

using namespace ppf;

namespace {

constexpr double kPi = std::numbers::pi;

/// Estimate with hand-set radial bins of unit width starting at 0.
SpectralEstimate with_ratios(const std::vector<double>& ratios, double lambda = 10.0) {
  SpectralEstimate e;
  e.lattice.dim = 2;
  e.intensity_hat = lambda;
  e.k_max = static_cast<double>(ratios.size());
  std::vector<RadialBin> bins;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    bins.push_back({double(i), double(i + 1), i + 0.5, ratios[i] * lambda, 10});
  e.radial_bins = bins;
  return e;
}

double band_outer(const WavenumberRegion& r) {
  return r.kind() == WavenumberRegion::Kind::Ball ? r.radius() : r.first().radius();
}

double band_inner(const WavenumberRegion& r) {
  return r.kind() == WavenumberRegion::Kind::Ball ? 0.0 : r.second().radius();
}

}  // namespace

TEST_CASE("single centred point gives unit values where the window transform vanishes") {
  const PointPattern p({{0.5, 0.5}}, Window::unit(2));
  const SpectralEstimate e = periodogram(p, 6.0);
  CHECK(e.intensity_hat == 1.0);
  CHECK(e.lattice.half_extent[0] == 6);
  CHECK(e.values.size() == 13 * 13);
  const std::size_t dc = e.lattice.dc_index();
  CHECK(norm(e.wavenumbers[dc]) == 0.0);
  for (std::size_t i = 0; i < e.values.size(); ++i)
    if (i != dc) CHECK(e.values[i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lattice geometry follows the window sides") {
  const PointPattern p({{0.5, 0.5}}, Window({0.0, 0.0}, {2.0, 1.0}));
  const SpectralEstimate e = periodogram(p, 5.0);
  CHECK(e.lattice.half_extent[0] == 10);
  CHECK(e.lattice.half_extent[1] == 5);
  CHECK(e.lattice.spacing[0] == 0.5);
  CHECK(e.lattice.spacing[1] == 1.0);
  for (const Vec& k : e.wavenumbers) {
    CHECK(std::abs(k[0]) <= 5.0);
    CHECK(std::abs(k[1]) <= 5.0);
  }
}

TEST_CASE("periodogram preconditions") {
  CHECK_THROWS_AS(periodogram(PointPattern(Window::unit(2)), 10.0), EstimationError);
  const PointPattern p({{0.5, 0.5}}, Window::unit(2));
  CHECK_THROWS_AS(periodogram(p, 3.0), GridError);  // 7 nodes per axis
  CHECK_NOTHROW(periodogram(p, 4.0));
  CHECK_THROWS_AS(periodogram(p, 0.0), GridError);
}

TEST_CASE("periodogram is nonnegative and translation invariant") {
  const PointPattern p = simulate_thomas(25, 8, 0.03, Window::unit(2), 0.15, RandomSeed{4});
  const Vec shift{3.7, -1.2};
  std::vector<Vec> moved;
  for (const Vec& x : p.points()) moved.push_back(x + shift);
  const PointPattern q(moved, Window(Vec{0.0, 0.0} + shift, Vec{1.0, 1.0} + shift));
  const SpectralEstimate a = periodogram(p, 12.0), b = periodogram(q, 12.0);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    CHECK(a.values[i] >= 0.0);
    CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-9 * std::max(1.0, a.values[i]));
  }
}

TEST_CASE("periodogram in one and three dimensions") {
  const PointPattern line({{0.5}}, Window::unit(1));
  const SpectralEstimate e1 = periodogram(line, 8.0);
  CHECK(e1.values.size() == 17);
  for (std::size_t i = 0; i < e1.values.size(); ++i)
    if (i != e1.lattice.dc_index()) CHECK(e1.values[i] == doctest::Approx(1.0));
  CHECK_THROWS_AS(isotropic_reduce(e1, 4), DimensionError);

  const PointPattern cube({{0.5, 0.5, 0.5}, {0.25, 0.5, 0.75}}, Window::unit(3));
  const SpectralEstimate e3 = periodogram(cube, 4.0);
  CHECK(e3.values.size() == 9 * 9 * 9);
  // node k = (1, 0, 0): |e^{-iπ} + e^{-iπ/2}|² / 1 = 2
  std::size_t idx = 0;
  for (std::size_t i = 0; i < e3.wavenumbers.size(); ++i)
    if (e3.wavenumbers[i] == Vec{1.0, 0.0, 0.0}) idx = i;
  CHECK(e3.values[idx] == doctest::Approx(2.0));
}

TEST_CASE("poisson ensemble mean over the mid band") {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SpectralEstimate e = periodogram(simulate_poisson(100.0, Window::unit(2), RandomSeed{s}), 15.0);
    for (std::size_t i = 0; i < e.values.size(); ++i) {
      const double r = norm(e.wavenumbers[i]);
      if (r >= 5.0 && r <= 15.0) {
        sum += e.values[i];
        ++n;
      }
    }
  }
  CHECK(sum / static_cast<double>(n) == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("isotropic_reduce") {
  const PointPattern p = simulate_poisson(80.0, Window::unit(2), RandomSeed{8});
  SpectralEstimate e = periodogram(p, 10.0);
  for (double& v : e.values) v = 7.5;
  const SpectralEstimate r = isotropic_reduce(e, 10);
  REQUIRE(r.radial_bins);
  std::size_t total = 0, expected = 0;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    const double k = norm(e.wavenumbers[i]);
    if (k > 0.0 && k <= 10.0) ++expected;
  }
  double previous_outer = 0.0;
  for (const RadialBin& b : *r.radial_bins) {
    CHECK(b.inner == doctest::Approx(previous_outer));
    previous_outer = b.outer;
    total += b.count;
    if (b.count) CHECK(b.value == doctest::Approx(7.5));
  }
  CHECK(previous_outer == 10.0);
  CHECK(total == expected);
  CHECK((*r.radial_bins)[0].count == 0);  // only the DC node has |k| < 1

  // Two nodes sharing a bin average arithmetically.
  SpectralEstimate two = periodogram(p, 4.0);
  for (std::size_t i = 0; i < two.values.size(); ++i) two.values[i] = two.wavenumbers[i][0] > 0 ? 4.0 : 2.0;
  const SpectralEstimate tr = isotropic_reduce(two, 4);
  // bin [1, 2): nodes (±1, 0), (0, ±1), (±1, ±1); three have kx > 0, five do not.
  CHECK((*tr.radial_bins)[1].count == 8);
  CHECK((*tr.radial_bins)[1].value == doctest::Approx((3 * 4.0 + 5 * 2.0) / 8.0));

  CHECK_THROWS_AS(isotropic_reduce(e, 100000), BinError);
  CHECK_THROWS_AS(isotropic_reduce(e, 0), BinError);
}

TEST_CASE("poisson ensemble radial bins stay near the intensity") {
  std::vector<double> sums(25, 0.0), lambdas;
  std::vector<std::size_t> counts(25, 0);
  double lambda_sum = 0.0;
  const int reps = 100;
  for (int s = 0; s < reps; ++s) {
    const SpectralEstimate e =
        isotropic_reduce(periodogram(simulate_poisson(100.0, Window::unit(2), RandomSeed{300u + s}), 25.0), 25);
    lambda_sum += e.intensity_hat;
    for (std::size_t b = 0; b < 25; ++b) {
      sums[b] += (*e.radial_bins)[b].value;
      counts[b] = (*e.radial_bins)[b].count;
    }
  }
  const double lambda = lambda_sum / reps;
  for (std::size_t b = 0; b < 25; ++b)
    if (counts[b] >= 20) CHECK(sums[b] / reps == doctest::Approx(lambda).epsilon(0.10));
}

TEST_CASE("smoothing") {
  const PointPattern p = simulate_poisson(60.0, Window::unit(2), RandomSeed{2});
  SpectralEstimate e = periodogram(p, 6.0);
  const std::size_t dc = e.lattice.dc_index();
  for (double& v : e.values) v = 3.0;
  e.values[dc] = 1000.0;
  const SpectralEstimate s = smooth_lattice(e);
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (i != dc) CHECK(s.values[i] == doctest::Approx(3.0));
  const SpectralEstimate direct = periodogram(p, 6.0, {true});
  const SpectralEstimate raw = periodogram(p, 6.0);
  CHECK(smooth_lattice(raw).values == direct.values);
}

TEST_CASE("select_band examples") {
  const auto low = select_band(with_ratios({3.0, 2.0, 1.1, 1.0, 1.0}), 0.2);
  REQUIRE(low);
  CHECK(low->kind() == WavenumberRegion::Kind::Ball);
  CHECK(low->radius() == 2.0);

  CHECK_FALSE(select_band(with_ratios({1.0, 1.0, 1.0, 1.0, 1.0}), 0.5));

  const auto band = select_band(with_ratios({1.0, 1.1, 2.0, 0.2, 1.0}), 0.5);
  REQUIRE(band);
  CHECK(band->kind() == WavenumberRegion::Kind::Difference);
  CHECK(band_inner(*band) == 2.0);
  CHECK(band_outer(*band) == 4.0);
}

TEST_CASE("select_band skips empty bins and rejects bad input") {
  SpectralEstimate e = with_ratios({5.0, 3.0, 1.0});
  (*e.radial_bins)[0].count = 0;
  const auto b = select_band(e, 0.5);
  REQUIRE(b);
  CHECK(b->kind() == WavenumberRegion::Kind::Ball);  // first nonempty bin starts the run
  CHECK(b->radius() == 2.0);

  SpectralEstimate none = with_ratios({2.0});
  none.radial_bins.reset();
  CHECK_THROWS_AS(select_band(none, 0.5), EstimationError);
  SpectralEstimate zero = with_ratios({2.0});
  zero.intensity_hat = 0.0;
  CHECK_THROWS_AS(select_band(zero, 0.5), EstimationError);
}

TEST_CASE("raising the threshold never widens the band on unimodal profiles") {
  // Profiles rising to a single peak and then falling; the scan rule is only
  // nested under this shape (compare (1.3, 1.0, 3.0): Ball(1) at 0.2, annulus
  // (2, 3) at 0.5).
  for (std::uint64_t s = 0; s < 300; ++s) {
    RandomStream rng(RandomSeed{s}, 99);
    const std::size_t n = 6 + static_cast<std::size_t>(rng.uniform() * 10);
    const std::size_t peak = static_cast<std::size_t>(rng.uniform() * n);
    std::vector<double> ratios(n);
    const double top = 1.0 + 4.0 * rng.uniform();
    const double decay = 0.3 + rng.uniform();
    for (std::size_t i = 0; i < n; ++i) {
      const double dist = std::abs(double(i) - double(peak));
      ratios[i] = 1.0 + (top - 1.0) * std::exp(-dist * decay);
    }
    const double thresholds[] = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 3.0};
    for (std::size_t t = 0; t + 1 < std::size(thresholds); ++t) {
      const auto looser = select_band(with_ratios(ratios), thresholds[t]);
      const auto stricter = select_band(with_ratios(ratios), thresholds[t + 1]);
      if (!stricter) continue;
      REQUIRE(looser);
      CHECK(band_outer(*stricter) <= band_outer(*looser));
      CHECK(band_inner(*stricter) >= band_inner(*looser));
    }
  }
}

TEST_CASE("non-unimodal profile shows the scan rule is not nested") {
  const auto loose = select_band(with_ratios({1.3, 1.0, 3.0}), 0.2);
  const auto strict = select_band(with_ratios({1.3, 1.0, 3.0}), 0.5);
  REQUIRE(loose);
  REQUIRE(strict);
  CHECK(loose->kind() == WavenumberRegion::Kind::Ball);
  CHECK(strict->kind() == WavenumberRegion::Kind::Difference);
}

TEST_CASE("pool_radial averages relative deviations") {
  SpectralEstimate a = with_ratios({3.0, 1.0}, 10.0), b = with_ratios({1.0, 1.0}, 30.0);
  const SpectralEstimate pooled = pool_radial(std::vector<SpectralEstimate>{a, b});
  CHECK(pooled.intensity_hat == 20.0);
  CHECK((*pooled.radial_bins)[0].value == doctest::Approx(20.0 * 2.0));
  CHECK((*pooled.radial_bins)[1].value == doctest::Approx(20.0));
  SpectralEstimate c = with_ratios({1.0, 1.0, 1.0});
  CHECK_THROWS_AS(pool_radial(std::vector<SpectralEstimate>{a, c}), BinError);
}

TEST_CASE("thomas ensemble selects a low-pass band at the oracle crossing") {
  const double kappa = 25, mu = 8, sigma = 0.03, tau = 0.5;
  const std::size_t bins = 25;
  const int reps = 100;
  SpectralEstimate mean_est;
  std::vector<double> sums(bins, 0.0);
  double lambda_sum = 0.0;
  for (int s = 0; s < reps; ++s) {
    const PointPattern p = simulate_thomas(kappa, mu, sigma, Window::unit(2), 0.15, RandomSeed{7000u + s});
    SpectralEstimate e = isotropic_reduce(periodogram(p, 25.0), bins);
    lambda_sum += e.intensity_hat;
    for (std::size_t b = 0; b < bins; ++b) sums[b] += (*e.radial_bins)[b].value;
    if (s == 0) mean_est = e;
  }
  mean_est.intensity_hat = lambda_sum / reps;
  for (std::size_t b = 0; b < bins; ++b) (*mean_est.radial_bins)[b].value = sums[b] / reps;
  const auto band = select_band(mean_est, tau);
  REQUIRE(band);
  CHECK(band->kind() == WavenumberRegion::Kind::Ball);
  const double crossing = std::sqrt(std::log(mu / tau)) / (2.0 * kPi * sigma);
  CHECK(std::abs(band->radius() - crossing) <= 1.0);  // bin width 1
  CHECK(oracle::thomas_spectrum(kappa, mu, sigma, crossing) == doctest::Approx((1 + tau) * kappa * mu));
}
