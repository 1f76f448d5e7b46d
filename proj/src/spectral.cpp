#include "ppf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ppf/errors.hpp"
#include "ppf/parallel.hpp"
#include "ppf/special.hpp"

namespace ppf {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinAxisNodes = 8;

void unflatten(const FourierLattice& lat, std::size_t index, long* m) {
  for (std::size_t j = 0; j < lat.dim; ++j) {
    const std::size_t n = lat.axis_nodes(j);
    m[j] = static_cast<long>(index % n) - static_cast<long>(lat.half_extent[j]);
    index /= n;
  }
}

}  // namespace

std::size_t FourierLattice::size() const noexcept {
  std::size_t n = 1;
  for (std::size_t j = 0; j < dim; ++j) n *= axis_nodes(j);
  return n;
}

std::size_t FourierLattice::dc_index() const noexcept {
  std::size_t index = 0, stride = 1;
  for (std::size_t j = 0; j < dim; ++j) {
    index += half_extent[j] * stride;
    stride *= axis_nodes(j);
  }
  return index;
}

Vec FourierLattice::node(std::size_t index) const {
  long m[kMaxDim] = {0, 0, 0};
  unflatten(*this, index, m);
  Vec k(dim);
  for (std::size_t j = 0; j < dim; ++j) k[j] = static_cast<double>(m[j]) * spacing[j];
  return k;
}

SpectralEstimate periodogram(const PointPattern& pattern, double k_max, PeriodogramOptions options) {
  if (pattern.empty()) throw EstimationError("periodogram: pattern has no points");
  if (!(k_max > 0.0)) throw GridError("periodogram: k_max must be positive");
  const Window& w = pattern.window();
  const std::size_t d = w.dimension();

  SpectralEstimate est;
  est.k_max = k_max;
  est.intensity_hat = estimate_intensity(pattern).value;
  est.lattice.dim = d;
  est.lattice.spacing = Vec(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double side = w.side(j);
    est.lattice.spacing[j] = 1.0 / side;
    est.lattice.half_extent[j] = static_cast<std::size_t>(std::floor(k_max * side + 1e-9));
    if (est.lattice.axis_nodes(j) < kMinAxisNodes)
      throw GridError("periodogram: k_max = " + std::to_string(k_max) + " gives fewer than " +
                      std::to_string(kMinAxisNodes) + " lattice nodes on axis " + std::to_string(j));
  }
  const FourierLattice& lat = est.lattice;
  const std::size_t total = lat.size();
  est.wavenumbers.reserve(total);
  for (std::size_t i = 0; i < total; ++i) est.wavenumbers.push_back(lat.node(i));

  // Work relative to the window's lower corner; the common phase cancels in the modulus.
  const Vec& origin = w.lower();
  const double volume = w.volume();

  // Window transform ∫_0^L exp(-2πi k u) du = L sinc(kL) exp(-πi kL), per axis.
  std::vector<std::complex<double>> window_ft[kMaxDim];
  for (std::size_t j = 0; j < d; ++j) {
    const double side = w.side(j);
    const long half = static_cast<long>(lat.half_extent[j]);
    for (long m = -half; m <= half; ++m) {
      const double kl = static_cast<double>(m);  // k * L for k = m / L
      window_ft[j].push_back(side * special::sinc(kl) * std::polar(1.0, -kPi * kl));
    }
  }

  // Slabs over the last axis; each node is summed over points in pattern order.
  const std::size_t last = d - 1;
  const std::size_t slab_nodes = total / lat.axis_nodes(last);
  const std::size_t slabs = lat.axis_nodes(last);
  std::vector<std::complex<double>> sums(total);
  const auto& points = pattern.points();
  detail::parallel_for(slabs, [&](std::size_t slab) {
    const long m_last = static_cast<long>(slab) - static_cast<long>(lat.half_extent[last]);
    std::vector<std::complex<double>> axis_phase[kMaxDim];
    std::complex<double>* out = sums.data() + slab * slab_nodes;
    for (const Vec& x : points) {
      for (std::size_t j = 0; j < last; ++j) {
        const double t = (x[j] - origin[j]) * lat.spacing[j];
        const long half = static_cast<long>(lat.half_extent[j]);
        axis_phase[j].resize(lat.axis_nodes(j));
        for (long m = -half; m <= half; ++m)
          axis_phase[j][static_cast<std::size_t>(m + half)] = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) * t);
      }
      const double t_last = (x[last] - origin[last]) * lat.spacing[last];
      const std::complex<double> p_last = std::polar(1.0, -2.0 * kPi * static_cast<double>(m_last) * t_last);
      if (d == 1) {
        out[0] += p_last;
      } else if (d == 2) {
        for (std::size_t i0 = 0; i0 < lat.axis_nodes(0); ++i0) out[i0] += axis_phase[0][i0] * p_last;
      } else {
        const std::size_t n0 = lat.axis_nodes(0);
        for (std::size_t i1 = 0; i1 < lat.axis_nodes(1); ++i1) {
          const std::complex<double> p1 = axis_phase[1][i1] * p_last;
          for (std::size_t i0 = 0; i0 < n0; ++i0) out[i1 * n0 + i0] += axis_phase[0][i0] * p1;
        }
      }
    }
  });

  est.values.resize(total);
  long m[kMaxDim] = {0, 0, 0};
  for (std::size_t i = 0; i < total; ++i) {
    unflatten(lat, i, m);
    std::complex<double> ft = 1.0;
    for (std::size_t j = 0; j < d; ++j)
      ft *= window_ft[j][static_cast<std::size_t>(m[j] + static_cast<long>(lat.half_extent[j]))];
    est.values[i] = std::norm(sums[i] - est.intensity_hat * ft) / volume;
  }
  if (options.smooth) return smooth_lattice(est);
  return est;
}

SpectralEstimate smooth_lattice(const SpectralEstimate& estimate) {
  const FourierLattice& lat = estimate.lattice;
  const std::size_t d = lat.dim;
  const std::size_t dc = lat.dc_index();
  SpectralEstimate out = estimate;
  std::size_t neighbourhood = 1;
  for (std::size_t j = 0; j < d; ++j) neighbourhood *= 3;
  long m[kMaxDim] = {0, 0, 0};
  for (std::size_t i = 0; i < lat.size(); ++i) {
    unflatten(lat, i, m);
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t s = 0; s < neighbourhood; ++s) {
      std::size_t rest = s, index = 0, stride = 1;
      bool inside = true;
      for (std::size_t j = 0; j < d; ++j) {
        const long mj = m[j] + static_cast<long>(rest % 3) - 1;
        rest /= 3;
        const long half = static_cast<long>(lat.half_extent[j]);
        if (mj < -half || mj > half) {
          inside = false;
          break;
        }
        index += static_cast<std::size_t>(mj + half) * stride;
        stride *= lat.axis_nodes(j);
      }
      if (!inside || index == dc) continue;
      sum += estimate.values[index];
      ++used;
    }
    out.values[i] = used ? sum / static_cast<double>(used) : 0.0;
  }
  out.values[dc] = estimate.values[dc];
  return out;
}

SpectralEstimate isotropic_reduce(const SpectralEstimate& estimate, std::size_t n_bins) {
  const FourierLattice& lat = estimate.lattice;
  if (lat.dim < 2) throw DimensionError("isotropic_reduce: requires dimension >= 2");
  if (n_bins == 0) throw BinError("isotropic_reduce: n_bins must be positive");
  const double k_max = estimate.k_max;
  const std::size_t dc = lat.dc_index();

  std::vector<double> radii;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (i == dc) continue;
    const double r = norm(estimate.wavenumbers[i]);
    if (r <= k_max) radii.push_back(r);
  }
  std::vector<double> distinct = radii;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, b); }),
                 distinct.end());
  if (n_bins > distinct.size())
    throw BinError("isotropic_reduce: " + std::to_string(n_bins) + " bins requested but only " +
                   std::to_string(distinct.size()) + " distinct radii are available");

  const double width = k_max / static_cast<double>(n_bins);
  std::vector<RadialBin> bins(n_bins);
  std::vector<double> sums(n_bins, 0.0);
  for (std::size_t b = 0; b < n_bins; ++b) {
    bins[b].inner = width * static_cast<double>(b);
    bins[b].outer = b + 1 == n_bins ? k_max : width * static_cast<double>(b + 1);
    bins[b].center = 0.5 * (bins[b].inner + bins[b].outer);
  }
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (i == dc) continue;
    const double r = norm(estimate.wavenumbers[i]);
    if (r > k_max) continue;
    const std::size_t b = std::min(n_bins - 1, static_cast<std::size_t>(r / width));
    sums[b] += estimate.values[i];
    ++bins[b].count;
  }
  for (std::size_t b = 0; b < n_bins; ++b)
    if (bins[b].count) bins[b].value = sums[b] / static_cast<double>(bins[b].count);

  SpectralEstimate out = estimate;
  out.radial_bins = std::move(bins);
  return out;
}

SpectralEstimate pool_radial(std::span<const SpectralEstimate> estimates) {
  if (estimates.empty()) throw EstimationError("pool_radial: no estimates");
  for (const auto& e : estimates) {
    if (!e.radial_bins) throw EstimationError("pool_radial: estimate has no radial bins");
    if (!(e.intensity_hat > 0.0)) throw EstimationError("pool_radial: intensity estimate must be positive");
  }
  const auto& layout = *estimates.front().radial_bins;
  double lambda_bar = 0.0;
  for (const auto& e : estimates) {
    const auto& bins = *e.radial_bins;
    if (bins.size() != layout.size()) throw BinError("pool_radial: bin layouts differ");
    for (std::size_t b = 0; b < bins.size(); ++b)
      if (bins[b].inner != layout[b].inner || bins[b].outer != layout[b].outer || bins[b].count != layout[b].count)
        throw BinError("pool_radial: bin layouts differ");
    lambda_bar += e.intensity_hat;
  }
  const double n = static_cast<double>(estimates.size());
  lambda_bar /= n;
  SpectralEstimate out = estimates.front();
  out.intensity_hat = lambda_bar;
  for (std::size_t b = 0; b < layout.size(); ++b) {
    double ratio = 0.0;
    for (const auto& e : estimates) ratio += (*e.radial_bins)[b].value / e.intensity_hat;
    (*out.radial_bins)[b].value = lambda_bar * ratio / n;
  }
  return out;
}

std::optional<WavenumberRegion> select_band(const SpectralEstimate& estimate, double threshold) {
  if (!estimate.radial_bins) throw EstimationError("select_band: radial bins are missing");
  if (!(estimate.intensity_hat > 0.0)) throw EstimationError("select_band: intensity estimate must be positive");
  if (!(threshold > 0.0)) throw DomainError("select_band: threshold must be positive");
  const auto& bins = *estimate.radial_bins;
  const double lambda = estimate.intensity_hat;

  std::vector<const RadialBin*> nonempty;
  for (const auto& b : bins)
    if (b.count > 0) nonempty.push_back(&b);

  std::size_t start = nonempty.size();
  for (std::size_t i = 0; i < nonempty.size(); ++i) {
    if (std::abs(nonempty[i]->value / lambda - 1.0) > threshold) {
      start = i;
      break;
    }
  }
  if (start == nonempty.size()) return std::nullopt;
  std::size_t stop = start;
  while (stop + 1 < nonempty.size() && std::abs(nonempty[stop + 1]->value / lambda - 1.0) > threshold) ++stop;

  const double k_star = nonempty[stop]->outer;
  const std::size_t d = estimate.dimension();
  if (start == 0) return WavenumberRegion::ball(k_star, d);
  return WavenumberRegion::annulus(nonempty[start]->inner, k_star, d);
}

}  // namespace ppf
