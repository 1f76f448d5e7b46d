#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "ppf/format.hpp"

namespace ppfilter {
namespace {

using nlohmann::json;

double number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(std::string("'") + key + "' must be finite");
  return x;
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

ppf::Vec vector_of(const json& v, const char* what) {
  if (!v.is_array() || v.empty() || v.size() > ppf::kMaxDim)
    throw ConfigError(std::string(what) + " must be an array of 1 to 3 numbers");
  std::vector<double> xs;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(std::string(what) + " must contain numbers");
    xs.push_back(e.get<double>());
  }
  return ppf::Vec(std::span<const double>(xs));
}

}  // namespace

ppf::GaussianFieldSpec default_field_spec() {
  ppf::GaussianFieldSpec spec;
  spec.grid_resolution = 128;
  spec.covariance = {ppf::CovarianceModel::Gaussian, 1.0, 0.08};
  spec.mean = std::log(kDefaultLgcpIntensity) - 0.5 * spec.covariance.variance;
  return spec;
}

double SimulationConfig::effective_padding() const {
  if (padding) return *padding;
  return process == Process::Thomas ? 5.0 * sigma : 0.0;
}

double SimulationConfig::effective_noise_intensity() const {
  if (noise_intensity) return *noise_intensity;
  return std::exp(field.mean + 0.5 * field.covariance.variance);
}

SimulationConfig parse_simulation_config(const json& doc) {
  reject_unknown(doc,
                 {"process", "window", "seed", "intensity", "parent_intensity", "mean_offspring", "sigma", "padding",
                  "field", "coupling", "noise_intensity"},
                 "simulation config");
  SimulationConfig c;
  try {
    const std::string process = doc.at("process").get<std::string>();
    if (process == "poisson") c.process = Process::Poisson;
    else if (process == "thomas") c.process = Process::Thomas;
    else if (process == "lgcp-pair") c.process = Process::LgcpPair;
    else throw ConfigError("process must be poisson, thomas or lgcp-pair, got '" + process + "'");

    if (doc.contains("window")) {
      const json& w = doc.at("window");
      reject_unknown(w, {"lower", "upper"}, "window");
      c.window = ppf::Window(vector_of(w.at("lower"), "window.lower"), vector_of(w.at("upper"), "window.upper"));
    }
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
      c.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("intensity")) c.intensity = number(doc, "intensity");
    if (doc.contains("parent_intensity")) c.parent_intensity = number(doc, "parent_intensity");
    if (doc.contains("mean_offspring")) c.mean_offspring = number(doc, "mean_offspring");
    if (doc.contains("sigma")) c.sigma = number(doc, "sigma");
    if (doc.contains("padding")) c.padding = number(doc, "padding");
    if (doc.contains("noise_intensity")) c.noise_intensity = number(doc, "noise_intensity");
    if (doc.contains("coupling")) {
      const std::string s = doc.at("coupling").get<std::string>();
      if (s == "shared") c.coupling = ppf::FieldCoupling::Shared;
      else if (s == "opposite") c.coupling = ppf::FieldCoupling::Opposite;
      else throw ConfigError("coupling must be shared or opposite, got '" + s + "'");
    }
    if (doc.contains("field")) {
      const json& f = doc.at("field");
      reject_unknown(f, {"grid_resolution", "mean", "covariance"}, "field");
      if (f.contains("grid_resolution")) {
        if (!f.at("grid_resolution").is_number_unsigned()) throw ConfigError("'grid_resolution' must be a positive integer");
        c.field.grid_resolution = f.at("grid_resolution").get<std::size_t>();
      }
      if (f.contains("mean")) c.field.mean = number(f, "mean");
      if (f.contains("covariance")) {
        const json& cov = f.at("covariance");
        reject_unknown(cov, {"model", "variance", "range"}, "covariance");
        if (cov.contains("model")) {
          const std::string m = cov.at("model").get<std::string>();
          if (m == "gaussian") c.field.covariance.model = ppf::CovarianceModel::Gaussian;
          else if (m == "exponential") c.field.covariance.model = ppf::CovarianceModel::Exponential;
          else throw ConfigError("covariance model must be gaussian or exponential, got '" + m + "'");
        }
        if (cov.contains("variance")) c.field.covariance.variance = number(cov, "variance");
        if (cov.contains("range")) c.field.covariance.range = number(cov, "range");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("simulation config: ") + e.what());
  } catch (const ppf::DomainError& e) {
    throw ConfigError(std::string("simulation config: ") + e.what());
  } catch (const ppf::DimensionError& e) {
    throw ConfigError(std::string("simulation config: ") + e.what());
  }
  if (c.intensity < 0 || c.parent_intensity < 0 || c.mean_offspring < 0 || !(c.sigma > 0))
    throw ConfigError("simulation config: intensities must be >= 0 and sigma > 0");
  if (c.padding && *c.padding < 0) throw ConfigError("simulation config: padding must be >= 0");
  if (c.noise_intensity && *c.noise_intensity < 0) throw ConfigError("simulation config: noise_intensity must be >= 0");
  if (!(c.field.covariance.variance >= 0) || !(c.field.covariance.range > 0))
    throw ConfigError("simulation config: covariance variance must be >= 0 and range > 0");
  const std::size_t n = c.field.grid_resolution;
  if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("simulation config: grid_resolution must be a power of two");
  return c;
}

SimulationConfig load_simulation_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_simulation_config(doc);
}

SimulationOutput run_simulation(const SimulationConfig& c, const ppf::Window& window) {
  SimulationOutput out;
  const ppf::RandomSeed seed{c.seed};
  switch (c.process) {
    case Process::Poisson:
      out.patterns.push_back({"pattern", ppf::simulate_poisson(c.intensity, window, seed)});
      break;
    case Process::Thomas:
      out.patterns.push_back({"pattern", ppf::simulate_thomas(c.parent_intensity, c.mean_offspring, c.sigma, window,
                                                              c.effective_padding(), seed)});
      break;
    case Process::LgcpPair: {
      ppf::LgcpPair pair = ppf::simulate_lgcp_pair(c.field, window, c.effective_padding(), seed, c.coupling);
      ppf::PointPattern a = pair.first, b = pair.second;
      const double noise = c.effective_noise_intensity();
      if (noise > 0.0) {
        ppf::RandomStream streams(seed, ppf::Stream::Noise);
        a = ppf::superpose(a, ppf::simulate_poisson(noise, window, streams.split()));
        b = ppf::superpose(b, ppf::simulate_poisson(noise, window, streams.split()));
      }
      out.patterns.push_back({"first", std::move(a)});
      out.patterns.push_back({"second", std::move(b)});
      out.intensity = std::move(pair.intensity);
      if (c.coupling == ppf::FieldCoupling::Opposite) out.second_intensity = std::move(pair.second_intensity);
      break;
    }
  }
  return out;
}

ppf::Window parse_window(const std::string& text) {
  std::vector<double> v;
  try {
    v = ppf::parse_number_list(text);
  } catch (const ppf::ParseError& e) {
    throw ConfigError("--window: " + std::string(e.what()));
  }
  if (v.size() % 2 != 0 || v.size() < 2 || v.size() > 2 * ppf::kMaxDim)
    throw ConfigError("--window needs 2, 4 or 6 numbers (lower corner, then upper corner)");
  const std::size_t d = v.size() / 2;
  try {
    return ppf::Window(ppf::Vec(std::span<const double>(v.data(), d)), ppf::Vec(std::span<const double>(v.data() + d, d)));
  } catch (const ppf::Error& e) {
    throw ConfigError("--window: " + std::string(e.what()));
  }
}

std::string window_to_string(const ppf::Window& window) {
  std::string s;
  for (std::size_t j = 0; j < window.dimension(); ++j) s += (s.empty() ? "" : ",") + ppf::format_number(window.lower()[j]);
  for (std::size_t j = 0; j < window.dimension(); ++j) s += "," + ppf::format_number(window.upper()[j]);
  return s;
}

}  // namespace ppfilter
