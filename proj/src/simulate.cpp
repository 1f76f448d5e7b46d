#include "ppf/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "ppf/diagnostics.hpp"
#include "ppf/errors.hpp"
#include "ppf/format.hpp"

namespace ppf {
namespace {

void check_size(double expected) {
  if (!(expected < kMaxExpectedPoints))
    throw SizeError("simulation: expected point count " + format_number(expected) + " exceeds the cap of 1e8");
}

Vec uniform_point(RandomStream& rng, const Window& w) {
  Vec p(w.dimension());
  for (std::size_t j = 0; j < w.dimension(); ++j) p[j] = w.lower()[j] + rng.uniform() * w.side(j);
  // Rounding in lower + u * side can land on upper; closed containment keeps it valid.
  return p;
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

struct FftwPlan {
  fftw_plan plan = nullptr;
  ~FftwPlan() {
    if (plan) fftw_destroy_plan(plan);
  }
};

struct FftwBuffer {
  fftw_complex* data = nullptr;
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
};

// Forward DFT in place. Planning is not thread-safe in FFTW, so it is serialised.
void forward_dft(FftwBuffer& buf, const std::array<int, kMaxDim>& dims, std::size_t d) {
  static std::mutex planner_mutex;
  FftwPlan p;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    // FFTW takes the last dimension as the fastest varying; our axis 0 is fastest.
    int n[kMaxDim];
    for (std::size_t j = 0; j < d; ++j) n[j] = dims[d - 1 - j];
    p.plan = fftw_plan_dft(static_cast<int>(d), n, buf.data, buf.data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!p.plan) throw Error("FFTW: planning failed");
  fftw_execute(p.plan);
}

std::vector<Vec> thin(RandomStream& rng, const IntensityGrid& grid, const Window& window) {
  const double lambda_max = grid.maximum;
  check_size(lambda_max * window.volume());
  const std::uint64_t n = rng.poisson(lambda_max * window.volume());
  std::vector<Vec> kept;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vec p = uniform_point(rng, window);
    if (rng.uniform() * lambda_max < grid.nearest(p)) kept.push_back(p);
  }
  return kept;
}

}  // namespace

PointPattern simulate_poisson(double intensity, const Window& window, RandomSeed seed) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) throw DomainError("simulate_poisson: intensity must be >= 0");
  const double expected = intensity * window.volume();
  check_size(expected);
  RandomStream rng(seed, Stream::Points);
  const std::uint64_t n = rng.poisson(expected);
  std::vector<Vec> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) points.push_back(uniform_point(rng, window));
  return PointPattern(std::move(points), window);
}

PointPattern simulate_thomas(double parent_intensity, double mean_offspring, double sigma, const Window& window,
                             double padding, RandomSeed seed) {
  if (!(parent_intensity >= 0.0) || !(mean_offspring >= 0.0) || !(sigma > 0.0) || !(padding >= 0.0))
    throw DomainError("simulate_thomas: invalid parameters");
  if (padding < 4.0 * sigma)
    warn("simulate_thomas: padding " + format_number(padding) + " is below 4 sigma; expect edge depletion");
  const Window outer = window.padded(padding);
  check_size(parent_intensity * outer.volume() * std::max(1.0, mean_offspring));
  const PointPattern parents = simulate_poisson(parent_intensity, outer, RandomStream(seed, Stream::Parents).split());
  RandomStream rng(seed, Stream::Offspring);
  std::vector<Vec> children;
  const std::size_t d = window.dimension();
  for (const Vec& parent : parents.points()) {
    const std::uint64_t n = rng.poisson(mean_offspring);
    for (std::uint64_t i = 0; i < n; ++i) {
      Vec c = parent;
      for (std::size_t j = 0; j < d; ++j) c[j] += sigma * rng.normal();
      if (window.contains(c)) children.push_back(c);
    }
  }
  return PointPattern(std::move(children), window);
}

double CovarianceSpec::operator()(double distance) const {
  const double t = distance / range;
  return model == CovarianceModel::Exponential ? variance * std::exp(-t) : variance * std::exp(-t * t);
}

double IntensityGrid::nearest(const Vec& p) const {
  std::size_t index = 0, stride = 1;
  for (std::size_t j = 0; j < grid.dimension(); ++j) {
    const double t = std::round((p[j] - grid.origin[j]) / grid.spacing[j]);
    const double hi = static_cast<double>(grid.counts[j] - 1);
    index += static_cast<std::size_t>(std::clamp(t, 0.0, hi)) * stride;
    stride *= grid.counts[j];
  }
  return values[index];
}

IntensityGrid sample_gaussian_field(const GaussianFieldSpec& spec, const Window& domain, RandomSeed seed) {
  if (!is_power_of_two(spec.grid_resolution))
    throw DomainError("gaussian field: grid_resolution must be a power of two, got " +
                      std::to_string(spec.grid_resolution));
  if (!(spec.covariance.variance >= 0.0) || !(spec.covariance.range > 0.0))
    throw DomainError("gaussian field: variance must be >= 0 and range > 0");
  const std::size_t d = domain.dimension();
  const std::size_t n = spec.grid_resolution;
  IntensityGrid out;
  out.grid = GridSpec::covering(domain, n);
  out.values.assign(out.grid.size(), 0.0);
  if (spec.covariance.variance == 0.0) {
    out.maximum = 0.0;
    return out;
  }

  // Torus of 2n nodes per axis with the grid spacing; covariance at wrapped distance.
  std::array<int, kMaxDim> dims{1, 1, 1};
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    dims[j] = static_cast<int>(2 * n);
    total *= 2 * n;
  }
  FftwBuffer buf(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    double r2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t m = rest % (2 * n);
      rest /= 2 * n;
      const double lag = static_cast<double>(std::min(m, 2 * n - m)) * out.grid.spacing[j];
      r2 += lag * lag;
    }
    buf.data[i][0] = spec.covariance(std::sqrt(r2));
    buf.data[i][1] = 0.0;
  }
  forward_dft(buf, dims, d);

  double max_eig = 0.0, min_eig = 0.0, positive = 0.0, clipped = 0.0;
  std::vector<double> eig(total);
  for (std::size_t i = 0; i < total; ++i) {
    eig[i] = buf.data[i][0];
    max_eig = std::max(max_eig, eig[i]);
    min_eig = std::min(min_eig, eig[i]);
  }
  if (min_eig < -1e-9 * max_eig)
    throw CovarianceError("gaussian field: circulant embedding is not nonnegative-definite (eigenvalue " +
                          format_number(min_eig) + ", largest " + format_number(max_eig) + ")");
  for (double& e : eig) {
    if (e < 0.0) {
      clipped -= e;
      e = 0.0;
    } else {
      positive += e;
    }
  }
  out.clipped_eigenvalue_fraction = positive > 0.0 ? clipped / positive : 0.0;

  RandomStream rng(seed, Stream::Field);
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double a = std::sqrt(eig[i] * scale);
    buf.data[i][0] = a * rng.normal();
    buf.data[i][1] = a * rng.normal();
  }
  forward_dft(buf, dims, d);

  // Keep the leading n^d block of the torus.
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto idx = out.grid.index_of(i);
    std::size_t t = 0, stride = 1;
    for (std::size_t j = 0; j < d; ++j) {
      t += idx[j] * stride;
      stride *= 2 * n;
    }
    out.values[i] = buf.data[t][0];
  }
  return out;
}

LgcpPair simulate_lgcp_pair(const GaussianFieldSpec& spec, const Window& window, double padding, RandomSeed seed,
                            FieldCoupling coupling) {
  if (!(padding >= 0.0)) throw DomainError("simulate_lgcp_pair: padding must be >= 0");
  if (!std::isfinite(spec.mean)) throw DomainError("simulate_lgcp_pair: mean must be finite");
  const IntensityGrid field = sample_gaussian_field(spec, window.padded(padding), seed);

  auto exponentiate = [&](double sign) {
    IntensityGrid g = field;
    g.maximum = 0.0;
    for (double& v : g.values) {
      v = std::exp(spec.mean + sign * v);
      g.maximum = std::max(g.maximum, v);
    }
    return g;
  };
  IntensityGrid first = exponentiate(1.0);
  IntensityGrid second = coupling == FieldCoupling::Shared ? first : exponentiate(-1.0);

  RandomStream rng_a(seed, Stream::ThinningFirst);
  RandomStream rng_b(seed, Stream::ThinningSecond);
  PointPattern a(thin(rng_a, first, window), window);
  PointPattern b(thin(rng_b, second, window), window);
  return LgcpPair{std::move(a), std::move(b), std::move(first), std::move(second)};
}

PointPattern superpose(const PointPattern& a, const PointPattern& b) {
  if (!(a.window() == b.window())) throw WindowMismatchError("superpose: patterns have different windows");
  std::vector<Vec> points = a.points();
  points.insert(points.end(), b.points().begin(), b.points().end());
  return PointPattern(std::move(points), a.window());
}

}  // namespace ppf
