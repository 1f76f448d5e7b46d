#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using test_support::csv_rows;
using test_support::last_column;
using test_support::scratch_dir;
using test_support::slurp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ppfilter");
  std::ostringstream out, err;
  const int code = ppfilter::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

const fs::path kData = PPF_DATA_DIR;

}  // namespace

TEST_CASE("exit codes") {
  const auto dir = scratch_dir("cli_exit");
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({}).code == 2);
  CHECK(cli({"simulate"}).code == 2);
  CHECK(cli({"simulate", "--config", (dir / "missing.json").string()}).code == 2);
  write_file(dir / "bad.json", R"({"process": "poisson", "intensty": 10})");
  const Result bad = cli({"simulate", "--config", (dir / "bad.json").string(), "--out", dir.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("intensty") != std::string::npos);
  write_file(dir / "garbled.json", "{ not json");
  CHECK(cli({"simulate", "--config", (dir / "garbled.json").string()}).code == 2);

  write_file(dir / "empty.csv", "x,y\n");
  write_file(dir / "one.csv", "x,y\n0.5,0.5\n");
  const std::string o = (dir / "o").string();
  CHECK(cli({"spectrum", "--input", (dir / "empty.csv").string(), "--window", "0,0,1,1", "--out", o}).code == 3);
  CHECK(cli({"filter", "--input", (dir / "empty.csv").string(), "--window", "0,0,1,1", "--region", "ball:2",
             "--out", o}).code == 3);
  CHECK(cli({"spectrum", "--input", (dir / "one.csv").string(), "--window", "0,0,1", "--out", o}).code == 2);
  CHECK(cli({"spectrum", "--input", (dir / "one.csv").string(), "--window", "0,0,0.5,0.4", "--out", o}).code == 2);
  CHECK(cli({"spectrum", "--input", (dir / "one.csv").string(), "--window", "0,0,1,1", "--kmax", "3", "--out", o})
            .code == 2);
  CHECK(cli({"filter", "--input", (dir / "one.csv").string(), "--window", "0,0,1,1", "--region", "blob:1", "--out",
             o}).code == 2);
  CHECK(cli({"filter", "--input", (dir / "one.csv").string(), "--window", "0,0,1,1", "--region", "ball:1",
             "--inner", "0.5,0.5,2,2", "--out", o}).code == 2);
  CHECK(cli({"pipeline", "--out", o}).code == 2);
}

TEST_CASE("simulate writes the documented files") {
  const auto dir = scratch_dir("cli_simulate");
  write_file(dir / "poisson.json", R"({"process": "poisson", "intensity": 100, "seed": 7})");
  write_file(dir / "thomas.json", R"({"process": "thomas", "mean_offspring": 0})");
  write_file(dir / "lgcp.json", R"({"process": "lgcp-pair", "field": {"grid_resolution": 32}})");

  const auto pdir = dir / "p";
  REQUIRE(cli({"simulate", "--config", (dir / "poisson.json").string(), "--out", pdir.string()}).code == 0);
  const auto rows = csv_rows(pdir / "pattern.csv");
  CHECK(rows.size() > 60);
  CHECK(rows.size() < 140);
  CHECK(slurp(pdir / "pattern.csv").rfind("x,y\n", 0) == 0);

  const auto tdir = dir / "t";
  REQUIRE(cli({"simulate", "--config", (dir / "thomas.json").string(), "--out", tdir.string()}).code == 0);
  CHECK(slurp(tdir / "pattern.csv") == "x,y\n");

  const auto ldir = dir / "l";
  REQUIRE(cli({"simulate", "--config", (dir / "lgcp.json").string(), "--out", ldir.string()}).code == 0);
  CHECK(fs::exists(ldir / "first.csv"));
  CHECK(fs::exists(ldir / "second.csv"));
  CHECK(fs::exists(ldir / "intensity.csv"));
  CHECK_FALSE(fs::exists(ldir / "intensity_second.csv"));
  CHECK(last_column(ldir / "intensity.csv").size() == 32 * 32);
  CHECK(slurp(ldir / "intensity.csv").rfind("x,y,value\n", 0) == 0);
}

TEST_CASE("simulate row counts are Poisson distributed over seeds") {
  const auto dir = scratch_dir("cli_poisson_counts");
  write_file(dir / "poisson.json", R"({"process": "poisson", "intensity": 100})");
  std::vector<double> counts;
  for (int s = 0; s < 200; ++s) {
    REQUIRE(cli({"simulate", "--config", (dir / "poisson.json").string(), "--seed", std::to_string(s), "--out",
                 dir.string()}).code == 0);
    counts.push_back(static_cast<double>(csv_rows(dir / "pattern.csv").size()));
  }
  CHECK(test_support::mean(counts) == doctest::Approx(100.0).epsilon(0.03));
  CHECK(test_support::variance(counts) == doctest::Approx(100.0).epsilon(0.3));
}

TEST_CASE("simulate is deterministic per seed") {
  const auto dir = scratch_dir("cli_sim_det");
  write_file(dir / "lgcp.json", R"({"process": "lgcp-pair", "seed": 11, "field": {"grid_resolution": 32}})");
  REQUIRE(cli({"simulate", "--config", (dir / "lgcp.json").string(), "--out", (dir / "a").string()}).code == 0);
  REQUIRE(cli({"simulate", "--config", (dir / "lgcp.json").string(), "--out", (dir / "b").string()}).code == 0);
  REQUIRE(cli({"simulate", "--config", (dir / "lgcp.json").string(), "--seed", "12", "--out", (dir / "c").string()})
              .code == 0);
  for (const char* f : {"first.csv", "second.csv", "intensity.csv"}) CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  CHECK(slurp(dir / "a" / "first.csv") != slurp(dir / "c" / "first.csv"));
}

TEST_CASE("spectrum of a single point") {
  const auto dir = scratch_dir("cli_spectrum_one");
  write_file(dir / "one.csv", "x,y\n0.5,0.5\n");
  const Result r = cli({"spectrum", "--input", (dir / "one.csv").string(), "--window", "0,0,1,1", "--kmax", "6",
                        "--bins", "6", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("lambda_hat one 1") != std::string::npos);
  // The window transform vanishes at every non-DC node of a unit window.
  for (double v : last_column(dir / "one_spectrum.csv")) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fs::exists(dir / "one_radial.csv"));
}

TEST_CASE("spectrum reports no band for Poisson data in most seeds") {
  const auto dir = scratch_dir("cli_poisson_band");
  write_file(dir / "poisson.json", R"({"process": "poisson", "intensity": 100})");
  int none = 0;
  for (int s = 1; s <= 10; ++s) {
    REQUIRE(cli({"simulate", "--config", (dir / "poisson.json").string(), "--seed", std::to_string(s), "--out",
                 dir.string()}).code == 0);
    const Result r = cli({"spectrum", "--input", (dir / "pattern.csv").string(), "--window", "0,0,1,1", "--threshold",
                          "0.5", "--out", dir.string()});
    REQUIRE(r.code == 0);
    none += r.out.find("no band") != std::string::npos;
  }
  CHECK(none >= 6);

  // Under auto, filter turns "no band" into its own exit code.
  const Result f = cli({"filter", "--input", (dir / "pattern.csv").string(), "--window", "0,0,1,1", "--region", "auto",
                        "--threshold", "50", "--out", dir.string()});
  CHECK(f.code == 4);
  CHECK(f.out.find("no band") != std::string::npos);
  CHECK(f.err.find("Poisson") != std::string::npos);
}

TEST_CASE("spectrum reports a low-pass ball for Thomas data") {
  const auto dir = scratch_dir("cli_thomas_band");
  write_file(dir / "thomas.json", R"({"process": "thomas", "parent_intensity": 25, "mean_offspring": 8, "sigma": 0.03})");
  int balls = 0;
  for (int s = 1; s <= 10; ++s) {
    REQUIRE(cli({"simulate", "--config", (dir / "thomas.json").string(), "--seed", std::to_string(s), "--out",
                 dir.string()}).code == 0);
    const Result r = cli({"spectrum", "--input", (dir / "pattern.csv").string(), "--window", "0,0,1,1", "--threshold",
                          "0.5", "--out", dir.string()});
    REQUIRE(r.code == 0);
    balls += r.out.find("band ball:") != std::string::npos;
  }
  CHECK(balls >= 8);
}

TEST_CASE("filter of a single centred point peaks at the centre pixel") {
  const auto dir = scratch_dir("cli_filter_one");
  write_file(dir / "one.csv", "x,y\n0,0\n");
  const Result r = cli({"filter", "--input", (dir / "one.csv").string(), "--window", "-5,-5,5,5", "--region", "ball:1",
                        "--grid", "33", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const std::string pgm = slurp(dir / "one_field.pgm");
  const std::string header = "P5\n33 33\n255\n";
  REQUIRE(pgm.size() == header.size() + 33 * 33);
  CHECK(pgm.substr(0, header.size()) == header);
  const auto centre = static_cast<unsigned char>(pgm[header.size() + 16 * 33 + 16]);
  for (std::size_t i = header.size(); i < pgm.size(); ++i) CHECK(static_cast<unsigned char>(pgm[i]) >= centre);
  CHECK(centre == 0);

  const auto values = last_column(dir / "one_field.csv");
  REQUIRE(values.size() == 33 * 33);
  CHECK(values[16 * 33 + 16] == doctest::Approx(3.141592653589793 - 0.01));  // mean term removed

  const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
  CHECK(meta["region"] == "ball:1");
  CHECK(meta["region_source"] == "given");
  CHECK(meta["mean_removed"] == true);
  CHECK(meta["edge_margin"].get<double>() > 0.0);
  CHECK(meta.contains("version"));
  CHECK(meta["patterns"][0]["lambda_hat"].get<double>() == doctest::Approx(0.01));
}

TEST_CASE("multiple patterns share one colour range") {
  const auto dir = scratch_dir("cli_shared_range");
  write_file(dir / "a.csv", "x,y\n0.5,0.5\n");
  write_file(dir / "b.csv", "x,y\n0.5,0.5\n0.52,0.5\n0.5,0.52\n");
  REQUIRE(cli({"filter", "--input", (dir / "a.csv").string(), "--input", (dir / "b.csv").string(), "--window",
               "0,0,1,1", "--region", "annulus:2,4", "--grid", "16", "--out", dir.string()}).code == 0);
  const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
  const double lo = meta["color_range"][0], hi = meta["color_range"][1];
  CHECK(lo == -hi);
  double peak = 0.0;
  for (const char* f : {"a_field.csv", "b_field.csv"})
    for (double v : last_column(dir / f)) peak = std::max(peak, std::abs(v));
  CHECK(hi == doctest::Approx(peak));
  CHECK(meta["patterns"].size() == 2);
}

TEST_CASE("filter with auto equals the printed band fed back manually") {
  const auto dir = scratch_dir("cli_compose");
  write_file(dir / "thomas.json", R"({"process": "thomas", "seed": 5})");
  REQUIRE(cli({"simulate", "--config", (dir / "thomas.json").string(), "--out", dir.string()}).code == 0);
  const std::string input = (dir / "pattern.csv").string();
  const Result spec = cli({"spectrum", "--input", input, "--window", "0,0,1,1", "--threshold", "0.5", "--out",
                           (dir / "s").string()});
  REQUIRE(spec.code == 0);
  const auto at = spec.out.find("band ");
  REQUIRE(at != std::string::npos);
  const std::string band = spec.out.substr(at + 5, spec.out.find('\n', at) - at - 5);
  REQUIRE(cli({"filter", "--input", input, "--window", "0,0,1,1", "--region", "auto", "--grid", "24", "--out",
               (dir / "a").string()}).code == 0);
  REQUIRE(cli({"filter", "--input", input, "--window", "0,0,1,1", "--region", band, "--grid", "24", "--out",
               (dir / "m").string()}).code == 0);
  CHECK(slurp(dir / "a" / "pattern_field.csv") == slurp(dir / "m" / "pattern_field.csv"));
  CHECK(slurp(dir / "a" / "pattern_field.pgm") == slurp(dir / "m" / "pattern_field.pgm"));
  const auto meta = nlohmann::json::parse(slurp(dir / "a" / "metadata.json"));
  CHECK(meta["region"] == band);
  CHECK(meta["region_source"] == "auto");
}

TEST_CASE("bundled two-species data segregate under the auto low-pass band") {
  const auto dir = scratch_dir("cli_two_species");
  const Result r = cli({"pipeline", "--input", (kData / "hickory.csv").string(), "--input",
                        (kData / "maple.csv").string(), "--window", "0,0,1,1", "--grid", "64", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("band ball:") != std::string::npos);
  const auto h = last_column(dir / "hickory_field.csv");
  const auto m = last_column(dir / "maple_field.csv");
  REQUIRE(h.size() == 64 * 64);
  // Interior: nodes at least 0.1 from the window boundary.
  std::vector<double> hi, mi;
  for (std::size_t iy = 0; iy < 64; ++iy)
    for (std::size_t ix = 0; ix < 64; ++ix) {
      const double x = (ix + 0.5) / 64, y = (iy + 0.5) / 64;
      if (x < 0.1 || x > 0.9 || y < 0.1 || y > 0.9) continue;
      hi.push_back(h[ix + 64 * iy]);
      mi.push_back(m[ix + 64 * iy]);
    }
  CHECK(test_support::correlation(hi, mi) < 0.0);
}

TEST_CASE("simulated pipeline writes every stage and is deterministic") {
  const auto dir = scratch_dir("cli_pipeline");
  write_file(dir / "cfg.json", R"({"process": "lgcp-pair", "seed": 3, "field": {"grid_resolution": 64}})");
  const auto run = [&](const std::string& out) {
    return cli({"pipeline", "--config", (dir / "cfg.json").string(), "--grid", "24", "--region", "ball:6", "--out",
                (dir / out).string()});
  };
  REQUIRE(run("a").code == 0);
  REQUIRE(run("b").code == 0);
  for (const char* f : {"first.csv", "second.csv", "intensity.csv", "first_spectrum.csv", "first_radial.csv",
                        "second_spectrum.csv", "first_field.csv", "second_field.csv", "first_field.pgm"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  const auto meta = nlohmann::json::parse(slurp(dir / "a" / "metadata.json"));
  CHECK(meta["seed"] == 3);
  CHECK(meta["simulation_padding"].get<double>() == doctest::Approx(meta["edge_margin"].get<double>()));
  CHECK(meta["evaluation_window"]["upper"][0] == 1.0);
  CHECK(meta["window"]["upper"][0].get<double>() > 1.0);
}
