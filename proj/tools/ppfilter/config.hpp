#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppf/core.hpp"
#include "ppf/errors.hpp"
#include "ppf/simulate.hpp"

namespace ppfilter {

class ConfigError : public ppf::Error {
 public:
  using ppf::Error::Error;
};

enum class Process { Poisson, Thomas, LgcpPair };

/// Default LGCP expected intensity exp(mean + variance / 2) per pattern.
inline constexpr double kDefaultLgcpIntensity = 400.0;

ppf::GaussianFieldSpec default_field_spec();

/// Simulation document. Omitted fields keep these defaults; unknown keys are
/// rejected.
struct SimulationConfig {
  Process process = Process::LgcpPair;
  ppf::Window window = ppf::Window::unit(2);
  std::uint64_t seed = 1;
  // poisson
  double intensity = 100.0;
  // thomas
  double parent_intensity = 25.0;
  double mean_offspring = 8.0;
  double sigma = 0.03;
  std::optional<double> padding;  // thomas: 5 sigma; lgcp: 0 (field padding)
  // lgcp-pair
  ppf::GaussianFieldSpec field = default_field_spec();
  ppf::FieldCoupling coupling = ppf::FieldCoupling::Shared;
  /// Intensity of the independent Poisson noise added to each LGCP pattern.
  /// Defaults to the LGCP expected intensity; 0 disables it.
  std::optional<double> noise_intensity;

  double effective_padding() const;
  double effective_noise_intensity() const;
};

SimulationConfig parse_simulation_config(const nlohmann::json& doc);
SimulationConfig load_simulation_config(const std::string& path);

struct NamedPattern {
  std::string name;
  ppf::PointPattern pattern;
};

struct SimulationOutput {
  std::vector<NamedPattern> patterns;
  std::optional<ppf::IntensityGrid> intensity;
  std::optional<ppf::IntensityGrid> second_intensity;  // only under opposite coupling
};

/// Runs the configured simulator on `window` (the configured window, possibly
/// padded by the caller).
SimulationOutput run_simulation(const SimulationConfig& config, const ppf::Window& window);

/// "x0,y0[,z0],x1,y1[,z1]": lower corner then upper corner.
ppf::Window parse_window(const std::string& text);
std::string window_to_string(const ppf::Window& window);

}  // namespace ppfilter
