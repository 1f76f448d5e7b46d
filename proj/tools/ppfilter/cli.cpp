#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "ppf/diagnostics.hpp"
#include "ppf/filter.hpp"
#include "ppf/format.hpp"
#include "ppf/io.hpp"
#include "ppf/spectral.hpp"

namespace ppfilter {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class NoBandError : public ppf::Error {
 public:
  using ppf::Error::Error;
};

class DegenerateError : public ppf::Error {
 public:
  using ppf::Error::Error;
};

struct Options {
  std::vector<std::string> inputs;
  std::string window;
  std::string inner;
  std::string region = "auto";
  double threshold = 0.5;
  std::size_t grid = 128;
  double kmax = 75.0;
  std::size_t bins = 25;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string config;
  std::optional<double> padding;
  bool smooth = false;
  bool keep_mean = false;
};

void add_spectral_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--kmax", o.kmax, "Largest wavenumber per axis of the periodogram lattice")->capture_default_str();
  cmd.add_option("--bins", o.bins, "Number of radial bins on [0, kmax]")->capture_default_str();
  cmd.add_flag("--smooth", o.smooth, "3^d box smoothing of the periodogram");
}

void add_input_options(CLI::App& cmd, Options& o, bool required) {
  auto* in = cmd.add_option("--input", o.inputs, "Pattern CSV file (repeatable)");
  auto* win = cmd.add_option("--window", o.window, "Observation window x0,y0,x1,y1");
  if (required) {
    in->required();
    win->required();
  }
  in->expected(1, -1);
}

std::vector<NamedPattern> load_inputs(const Options& o, const ppf::Window& window) {
  std::vector<NamedPattern> patterns;
  std::set<std::string> names;
  for (const auto& path : o.inputs) {
    std::string name = fs::path(path).stem().string();
    if (!names.insert(name).second) throw ConfigError("two inputs share the name '" + name + "'");
    try {
      patterns.push_back({name, ppf::io::read_pattern_csv(fs::path(path), window)});
    } catch (const ppf::IoError& e) {
      throw ConfigError(e.what());
    } catch (const ppf::ParseError& e) {
      throw ConfigError(e.what());
    } catch (const ppf::DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  return patterns;
}

ppf::Window evaluation_window(const Options& o, const ppf::Window& window) {
  if (o.inner.empty()) return window;
  ppf::Window inner = parse_window(o.inner);
  if (inner.dimension() != window.dimension()) throw ConfigError("--inner and --window dimensions differ");
  for (std::size_t j = 0; j < window.dimension(); ++j)
    if (inner.lower()[j] < window.lower()[j] || inner.upper()[j] > window.upper()[j])
      throw ConfigError("--inner must lie inside --window");
  return inner;
}

void check_options(const Options& o) {
  if (!(o.kmax > 0)) throw ConfigError("--kmax must be positive");
  if (o.bins == 0) throw ConfigError("--bins must be positive");
  if (o.grid == 0) throw ConfigError("--grid must be positive");
  if (!(o.threshold > 0)) throw ConfigError("--threshold must be positive");
}

fs::path prepare_out(const Options& o) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + o.out);
  return dir;
}

struct Spectra {
  std::vector<ppf::SpectralEstimate> estimates;
};

Spectra compute_spectra(const std::vector<NamedPattern>& patterns, const ppf::Window& inner, const Options& o) {
  Spectra s;
  for (const auto& p : patterns) {
    const ppf::PointPattern observed = p.pattern.restricted_to(inner);
    if (observed.empty()) throw DegenerateError("pattern '" + p.name + "' has no points in the observation window");
    ppf::SpectralEstimate e = ppf::periodogram(observed, o.kmax, {o.smooth});
    if (e.dimension() >= 2) e = ppf::isotropic_reduce(e, o.bins);
    s.estimates.push_back(std::move(e));
  }
  return s;
}

std::optional<ppf::WavenumberRegion> select(const Spectra& s, double threshold) {
  if (s.estimates.front().dimension() < 2) throw ConfigError("band selection requires dimension 2 or 3");
  return ppf::select_band(ppf::pool_radial(s.estimates), threshold);
}

void write_spectra(const std::vector<NamedPattern>& patterns, const Spectra& s, const fs::path& dir,
                   std::ostream& out) {
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& e = s.estimates[i];
    out << "lambda_hat " << patterns[i].name << ' ' << ppf::format_number(e.intensity_hat) << '\n';
    const fs::path spectrum = dir / (patterns[i].name + "_spectrum.csv");
    ppf::io::write_spectrum_csv(spectrum, e);
    out << "wrote " << spectrum.string() << '\n';
    if (e.radial_bins) {
      const fs::path radial = dir / (patterns[i].name + "_radial.csv");
      ppf::io::write_radial_csv(radial, e);
      out << "wrote " << radial.string() << '\n';
    }
  }
}

json window_json(const ppf::Window& w) {
  return {{"lower", std::vector<double>(w.lower().begin(), w.lower().end())},
          {"upper", std::vector<double>(w.upper().begin(), w.upper().end())}};
}

struct FilterRun {
  ppf::WavenumberRegion region;
  bool auto_band = false;
};

/// Filters every pattern on a grid over `inner`, writes fields, images and metadata.
void filter_stage(const std::vector<NamedPattern>& patterns, const FilterRun& run, const ppf::Window& window,
                  const ppf::Window& inner, const Options& o, const fs::path& dir, std::ostream& out,
                  json metadata) {
  const ppf::GridSpec grid = ppf::GridSpec::covering(inner, o.grid);
  std::vector<ppf::FilteredField> fields;
  for (const auto& p : patterns) {
    if (p.pattern.empty()) throw DegenerateError("pattern '" + p.name + "' is empty");
    fields.push_back(ppf::apply_filter(p.pattern, run.region, grid, !o.keep_mean));
  }

  // Shared colour range: symmetric about zero for zero-mean fields, min/max otherwise.
  const bool zero_mean = std::all_of(fields.begin(), fields.end(), [&](const ppf::FilteredField& f) {
    return f.mean_removed || ppf::transfer_indicator(run.region, ppf::Vec(inner.dimension())) == 0;
  });
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& f : fields)
    for (double v : f.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (zero_mean) {
    const double a = std::max(std::abs(lo), std::abs(hi));
    lo = -a;
    hi = a;
  }

  json entries = json::array();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto& f = fields[i];
    const fs::path csv = dir / (patterns[i].name + "_field.csv");
    ppf::io::write_field_csv(csv, f);
    out << "wrote " << csv.string() << '\n';
    json entry = {{"name", patterns[i].name},
                  {"points", patterns[i].pattern.size()},
                  {"lambda_hat", f.intensity_hat},
                  {"field_csv", csv.filename().string()}};
    if (inner.dimension() == 2) {
      const fs::path pgm = dir / (patterns[i].name + "_field.pgm");
      ppf::io::write_pgm(pgm, f.grid, f.values, lo, hi);
      out << "wrote " << pgm.string() << '\n';
      entry["image"] = pgm.filename().string();
    }
    entries.push_back(entry);
  }

  metadata["version"] = PPF_VERSION;
  metadata["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  metadata["window"] = window_json(window);
  metadata["evaluation_window"] = window_json(inner);
  metadata["grid"] = o.grid;
  metadata["region"] = ppf::to_string(run.region);
  metadata["region_source"] = run.auto_band ? "auto" : "given";
  metadata["edge_margin"] = fields.front().edge_margin;
  metadata["mean_removed"] = fields.front().mean_removed;
  metadata["color_range"] = {lo, hi};
  metadata["color_mapping"] = "linear, darker is larger";
  metadata["patterns"] = entries;
  const fs::path meta = dir / "metadata.json";
  std::ofstream m(meta, std::ios::binary);
  if (!m) throw ppf::IoError("cannot write " + meta.string());
  m << metadata.dump(2) << '\n';
  out << "wrote " << meta.string() << '\n';
}

FilterRun resolve_region(const Options& o, const std::vector<NamedPattern>& patterns, const ppf::Window& inner,
                         const Spectra* spectra, json& metadata, std::ostream& out) {
  const std::size_t d = inner.dimension();
  if (o.region != "auto") {
    try {
      return {ppf::parse_region(o.region, d), false};
    } catch (const ppf::Error& e) {
      throw ConfigError("--region: " + std::string(e.what()));
    }
  }
  std::optional<Spectra> local;
  if (!spectra) {
    local = compute_spectra(patterns, inner, o);
    spectra = &*local;
  }
  const auto band = select(*spectra, o.threshold);
  metadata["threshold"] = o.threshold;
  metadata["k_max"] = o.kmax;
  metadata["n_bins"] = o.bins;
  if (!band) {
    out << "no band\n";
    throw NoBandError("no wavenumber band deviates from the Poisson baseline by more than the threshold " +
                      ppf::format_number(o.threshold) + "; the data look Poisson-like");
  }
  out << "band " << ppf::to_string(*band) << '\n';
  return {*band, true};
}

int cmd_simulate(const Options& o, std::ostream& out) {
  SimulationConfig c = load_simulation_config(o.config);
  if (o.seed) c.seed = *o.seed;
  const fs::path dir = prepare_out(o);
  const SimulationOutput sim = run_simulation(c, c.window);
  for (const auto& p : sim.patterns) {
    const fs::path path = dir / (p.name + ".csv");
    ppf::io::write_pattern_csv(path, p.pattern);
    out << "wrote " << path.string() << " (" << p.pattern.size() << " points)\n";
  }
  if (sim.intensity) {
    ppf::io::write_intensity_csv(dir / "intensity.csv", *sim.intensity);
    out << "wrote " << (dir / "intensity.csv").string() << '\n';
  }
  if (sim.second_intensity) {
    ppf::io::write_intensity_csv(dir / "intensity_second.csv", *sim.second_intensity);
    out << "wrote " << (dir / "intensity_second.csv").string() << '\n';
  }
  return kExitOk;
}

int cmd_spectrum(const Options& o, bool threshold_given, std::ostream& out) {
  check_options(o);
  const ppf::Window window = parse_window(o.window);
  const ppf::Window inner = evaluation_window(o, window);
  const auto patterns = load_inputs(o, window);
  const fs::path dir = prepare_out(o);
  const Spectra s = compute_spectra(patterns, inner, o);
  write_spectra(patterns, s, dir, out);
  if (threshold_given) {
    const auto band = select(s, o.threshold);
    out << (band ? "band " + ppf::to_string(*band) : std::string("no band")) << '\n';
  }
  return kExitOk;
}

int cmd_filter(const Options& o, std::ostream& out) {
  check_options(o);
  const ppf::Window window = parse_window(o.window);
  const ppf::Window inner = evaluation_window(o, window);
  const auto patterns = load_inputs(o, window);
  for (const auto& p : patterns)
    if (p.pattern.empty()) throw DegenerateError("pattern '" + p.name + "' is empty");
  json metadata = json::object();
  const FilterRun run = resolve_region(o, patterns, inner, nullptr, metadata, out);
  const fs::path dir = prepare_out(o);
  filter_stage(patterns, run, window, inner, o, dir, out, metadata);
  return kExitOk;
}

int cmd_pipeline(const Options& o, std::ostream& out) {
  check_options(o);
  const bool simulated = !o.config.empty();
  if (simulated == !o.inputs.empty()) throw ConfigError("pipeline needs either --config or --input");
  std::vector<NamedPattern> patterns;
  ppf::Window window = ppf::Window::unit(1);
  ppf::Window inner = window;
  json metadata = json::object();
  const fs::path dir = prepare_out(o);
  if (simulated) {
    SimulationConfig c = load_simulation_config(o.config);
    Options effective = o;
    if (o.seed) c.seed = *o.seed;
    effective.seed = c.seed;
    inner = c.window;
    double padding = 0.5;
    if (o.padding) {
      padding = *o.padding;
    } else if (o.region != "auto") {
      try {
        padding = ppf::edge_margin_for(ppf::parse_region(o.region, inner.dimension()), 0.01);
      } catch (const ppf::Error& e) {
        throw ConfigError("--region: " + std::string(e.what()));
      }
    }
    if (padding < 0) throw ConfigError("--padding must be >= 0");
    window = padding > 0 ? inner.padded(padding) : inner;
    SimulationOutput sim = run_simulation(c, window);
    for (auto& p : sim.patterns) {
      const fs::path path = dir / (p.name + ".csv");
      ppf::io::write_pattern_csv(path, p.pattern);
      out << "wrote " << path.string() << " (" << p.pattern.size() << " points)\n";
      patterns.push_back(std::move(p));
    }
    if (sim.intensity) {
      ppf::io::write_intensity_csv(dir / "intensity.csv", *sim.intensity);
      out << "wrote " << (dir / "intensity.csv").string() << '\n';
    }
    if (sim.second_intensity) {
      ppf::io::write_intensity_csv(dir / "intensity_second.csv", *sim.second_intensity);
      out << "wrote " << (dir / "intensity_second.csv").string() << '\n';
    }
    metadata["simulation_padding"] = padding;
    const Spectra s = compute_spectra(patterns, inner, effective);
    write_spectra(patterns, s, dir, out);
    const FilterRun run = resolve_region(effective, patterns, inner, &s, metadata, out);
    filter_stage(patterns, run, window, inner, effective, dir, out, metadata);
    return kExitOk;
  }
  if (o.window.empty()) throw ConfigError("--window is required with --input");
  window = parse_window(o.window);
  inner = evaluation_window(o, window);
  patterns = load_inputs(o, window);
  const Spectra s = compute_spectra(patterns, inner, o);
  write_spectra(patterns, s, dir, out);
  const FilterRun run = resolve_region(o, patterns, inner, &s, metadata, out);
  filter_stage(patterns, run, window, inner, o, dir, out, metadata);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band-pass filtering of spatial point patterns", "ppfilter"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PPF_VERSION));
  Options o;

  auto* sim = app.add_subcommand("simulate", "Simulate point patterns from a JSON config");
  sim->add_option("--config", o.config, "Simulation config (JSON)")->required();
  sim->add_option("--out", o.out, "Output directory")->capture_default_str();
  sim->add_option("--seed", o.seed, "Override the config seed");

  auto* spec = app.add_subcommand("spectrum", "Periodogram and radial spectrum of patterns");
  add_input_options(*spec, o, true);
  spec->add_option("--inner", o.inner, "Estimate on this sub-window of --window");
  add_spectral_options(*spec, o);
  auto* thr = spec->add_option("--threshold", o.threshold, "Report the band selected at this threshold");
  spec->add_option("--out", o.out, "Output directory")->capture_default_str();
  spec->add_option("--seed", o.seed, "Recorded only");

  auto* filt = app.add_subcommand("filter", "Band-pass filter patterns onto a grid");
  add_input_options(*filt, o, true);
  filt->add_option("--inner", o.inner, "Evaluate (and estimate) on this sub-window of --window");
  filt->add_option("--region", o.region, "Region grammar or auto")->required();
  filt->add_option("--threshold", o.threshold, "Band selection threshold for auto")->capture_default_str();
  filt->add_option("--grid", o.grid, "Grid nodes per axis")->capture_default_str();
  add_spectral_options(*filt, o);
  filt->add_flag("--keep-mean", o.keep_mean, "Do not subtract the mean term when 0 is in the band");
  filt->add_option("--out", o.out, "Output directory")->capture_default_str();
  filt->add_option("--seed", o.seed, "Recorded only");

  auto* pipe = app.add_subcommand("pipeline", "Simulate or read, estimate, select a band and filter");
  pipe->add_option("--config", o.config, "Simulation config (JSON)");
  add_input_options(*pipe, o, false);
  pipe->add_option("--inner", o.inner, "Evaluation sub-window for --input");
  pipe->add_option("--region", o.region, "Region grammar or auto")->capture_default_str();
  pipe->add_option("--threshold", o.threshold, "Band selection threshold")->capture_default_str();
  pipe->add_option("--grid", o.grid, "Grid nodes per axis")->capture_default_str();
  add_spectral_options(*pipe, o);
  pipe->add_flag("--keep-mean", o.keep_mean, "Do not subtract the mean term when 0 is in the band");
  pipe->add_option("--padding", o.padding, "Simulation padding around the observation window");
  pipe->add_option("--out", o.out, "Output directory")->capture_default_str();
  pipe->add_option("--seed", o.seed, "Override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  auto sink = ppf::set_warning_sink([&err](std::string_view m) { err << "warning: " << m << '\n'; });
  int code = kExitOk;
  try {
    if (*sim) code = cmd_simulate(o, out);
    else if (*spec) code = cmd_spectrum(o, thr->count() > 0, out);
    else if (*filt) code = cmd_filter(o, out);
    else code = cmd_pipeline(o, out);
  } catch (const NoBandError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitNoBand;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitDegenerate;
  } catch (const ppf::EstimationError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitDegenerate;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitBadConfig;
  } catch (const ppf::GridError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitBadConfig;
  } catch (const ppf::BinError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitBadConfig;
  } catch (const ppf::Error& e) {
    err << "error: " << e.what() << '\n';
    code = kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kExitFailure;
  }
  ppf::set_warning_sink(std::move(sink));
  return code;
}

}  // namespace ppfilter
