#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "relaxfr/runner.hpp"

using namespace relaxfr;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("relaxfr_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& path) {
  Csv csv;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) csv.header.push_back(cell);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    csv.rows.push_back(row);
  }
  return csv;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("configuration parsing") {
  const fs::path dir = scratch_dir("config");
  {
    std::ofstream f(dir / "run.cfg");
    f << "# comment line\n"
      << "problem = burgers_sine\n"
      << "nx = 12   # trailing comment\n"
      << "\n"
      << "eps_max=1e-3\n"
      << "tableau = bpr343\n"
      << "positivity = true\n"
      << "format = vtk\n";
  }
  RunConfig cfg;
  load_config_file(cfg, dir / "run.cfg");
  CHECK(cfg.problem == "burgers_sine");
  CHECK(cfg.nx == 12);
  CHECK(cfg.eps_max == 1e-3);
  CHECK(cfg.tableau == "bpr343");
  CHECK(cfg.positivity == true);
  CHECK(cfg.format == "vtk");
  CHECK_NOTHROW(validate(cfg));

  const ProblemSpec spec = resolve_problem(cfg);
  CHECK(spec.nx == 12);
  CHECK(spec.eps_max == 1e-3);
  CHECK(spec.tableau == "BPR(3,4,3)");
  CHECK(spec.t_final == 0.5);

  CHECK_THROWS_AS(apply_setting(cfg, "resolution", "4"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(cfg, "nx", "four"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(cfg, "cfl", "0.3x"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(cfg, "positivity", "maybe"), std::invalid_argument);
  CHECK_THROWS_AS(load_config_file(cfg, dir / "missing.cfg"), std::runtime_error);
  {
    std::ofstream f(dir / "bad.cfg");
    f << "nx 12\n";
  }
  CHECK_THROWS_AS(load_config_file(cfg, dir / "bad.cfg"), std::invalid_argument);

  auto rejects = [](auto&& edit) {
    RunConfig c;
    c.problem = "burgers_sine";
    edit(c);
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
  };
  rejects([](RunConfig& c) { c.problem = "sod"; });
  rejects([](RunConfig& c) { c.tableau = "RK4"; });
  rejects([](RunConfig& c) { c.nx = 0; });
  rejects([](RunConfig& c) { c.degree = -1; });
  rejects([](RunConfig& c) { c.node_kind = "chebyshev"; });
  rejects([](RunConfig& c) { c.eps_max = 1e-14; });
  rejects([](RunConfig& c) { c.cfl = 0.0; });
  rejects([](RunConfig& c) { c.format = "hdf5"; });
  rejects([](RunConfig& c) { c.speed_policy = "magic"; });
  rejects([](RunConfig& c) { c.floor_fraction = 1.0; });
}

TEST_CASE("zero final time writes the initial data") {
  const fs::path dir = scratch_dir("t0");
  RunConfig cfg;
  cfg.problem = "burgers_sine";
  cfg.t_final = 0.0;
  cfg.output_dir = dir.string();
  Simulation sim(cfg);
  const RunReport report = sim.run();
  CHECK(report.status == "ok");
  CHECK(report.steps == 0);
  REQUIRE(report.frames.size() == 1);
  const Csv csv = read_csv(report.frames[0]);
  CHECK(csv.header == std::vector<std::string>{"x", "u", "eps"});
  REQUIRE(csv.rows.size() == 80);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double x = csv.rows[r][0];
    CHECK(csv.rows[r][1] == sim.state().values()[2 * r]);
    CHECK(std::abs(csv.rows[r][1] - (2.0 + std::sin(std::numbers::pi * (x - 0.7)))) < 1e-15);
  }
  CHECK(fs::exists(dir / "report.txt"));
}

TEST_CASE("CSV rows and round trip") {
  const fs::path dir = scratch_dir("csv");
  RunConfig cfg;
  cfg.problem = "lin_advection_1d";
  cfg.nx = 2;
  cfg.degree = 1;
  cfg.t_final = 0.05;
  Simulation sim(cfg);
  while (!sim.finished()) sim.step();
  write_frame(sim.scheme(), sim.state(), sim.eps(), FrameFormat::Csv, dir / "f.csv");
  const Csv csv = read_csv(dir / "f.csv");
  REQUIRE(csv.rows.size() == 4);
  for (int e = 0; e < 2; ++e) {
    for (int q = 0; q < 2; ++q) {
      const auto& row = csv.rows[2 * e + q];
      CHECK(row[0] == sim.scheme().node_coords(e, q)[0]);
      CHECK(row[1] == sim.state().node(e, q)[0]);
      CHECK(row[2] == sim.eps()[e]);
    }
  }

  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    double v;
    const auto bits = rng();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("2D frames") {
  const fs::path dir = scratch_dir("frames2d");
  RunConfig cfg;
  cfg.problem = "khi_2d";
  cfg.nx = 4;
  cfg.ny = 3;
  cfg.t_final = 0.0;
  Simulation sim(cfg);
  write_frame(sim.scheme(), sim.state(), sim.eps(), FrameFormat::Csv, dir / "f.csv");
  const Csv csv = read_csv(dir / "f.csv");
  CHECK(csv.header == std::vector<std::string>{"x", "y", "rho", "v1", "v2", "p", "eps"});
  CHECK(csv.rows.size() == 12 * 16);

  write_frame(sim.scheme(), sim.state(), sim.eps(), FrameFormat::Vtk, dir / "f.vtk");
  std::ifstream in(dir / "f.vtk");
  std::string line;
  std::getline(in, line);
  CHECK(line == "# vtk DataFile Version 3.0");
  const std::string text = slurp(dir / "f.vtk");
  CHECK(text.find("DATASET STRUCTURED_POINTS") != std::string::npos);
  CHECK(text.find("DIMENSIONS 5 4 1") != std::string::npos);
  CHECK(text.find("CELL_DATA 12") != std::string::npos);
  CHECK(text.find("SCALARS rho double 1") != std::string::npos);
  CHECK(text.find("SCALARS eps double 1") != std::string::npos);
}

TEST_CASE("frame names") {
  CHECK(frame_name(0, 0.0, FrameFormat::Csv) == "frame_0000_t0.csv");
  CHECK(frame_name(12, 0.038, FrameFormat::Vtk) == "frame_0012_t0.038.vtk");
  CHECK(parse_frame_format("vtk") == FrameFormat::Vtk);
  CHECK_THROWS_AS(parse_frame_format("png"), std::invalid_argument);
}

TEST_CASE("the last step lands on the final time") {
  const fs::path dir = scratch_dir("tfinal");
  RunConfig cfg;
  cfg.problem = "lin_advection_1d";
  cfg.t_final = 0.37;
  cfg.output_dir = dir.string();
  cfg.output_every = 25;
  const RunReport report = Simulation(cfg).run();
  CHECK(report.status == "ok");
  CHECK(report.time == 0.37);
  CHECK(report.dt_max > 0.0);
  CHECK(report.dt_min <= report.dt_max);
  REQUIRE(report.frames.size() >= 3);
  CHECK(fs::path(report.frames.back()).filename() == "frame_" +
        std::string(report.frames.size() - 1 < 10 ? "000" : "00") +
        std::to_string(report.frames.size() - 1) + "_t0.37.csv");
  CHECK(report.elliptic_violations == 0);

  const std::string text = slurp(dir / "report.txt");
  CHECK(text.find("status = ok") != std::string::npos);
  CHECK(text.find("time = 0.37") != std::string::npos);
  CHECK(text.find("relative_drift") != std::string::npos);
}

TEST_CASE("identical configurations give identical files") {
  std::vector<std::string> reports;
  std::vector<std::string> frames;
  for (const char* name : {"det_a", "det_b"}) {
    const fs::path dir = scratch_dir(name);
    RunConfig cfg;
    cfg.problem = "burgers_sine";
    cfg.t_final = 0.1;
    cfg.output_dir = dir.string();
    const RunReport r = Simulation(cfg).run();
    frames.push_back(slurp(r.frames.back()));
  }
  CHECK(frames[0] == frames[1]);
}

TEST_CASE("one advection period returns to the initial data") {
  RunConfig cfg;
  cfg.problem = "lin_advection_1d";
  Simulation sim(cfg);
  const NodalField w0 = sim.state();
  const RunReport report = sim.run();
  REQUIRE(report.status == "ok");
  double err = 0.0;
  for (std::size_t i = 0; i < w0.values().size(); i += 2) {
    err = std::max(err, std::abs(sim.state().values()[i] - w0.values()[i]));
  }
  CHECK(err < 1e-3);
  CHECK(report.relative_drift[0] < 1e-12);
}

TEST_CASE("failure exit codes") {
  RunConfig blowup;
  blowup.problem = "lin_advection_1d";
  blowup.cfl = 3.0;
  blowup.t_final = 100.0;
  const RunReport r1 = Simulation(blowup).run();
  CHECK(r1.status == "nonfinite");
  CHECK(r1.exit_code == 3);
  CHECK(r1.message.find("step") != std::string::npos);

  RunConfig blast;
  blast.problem = "wc_blast";
  blast.cfl = 0.05;
  const RunReport r2 = Simulation(blast).run();
  CHECK(r2.status == "admissibility");
  CHECK(r2.exit_code == 2);
}

TEST_CASE("2D convergence") {
  RunConfig cfg;
  cfg.problem = "lin_advection_2d";
  cfg.nx = 4;
  cfg.ny = 4;
  cfg.t_final = 0.25;
  const auto rows = convergence_study(cfg, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].nx == 8);
  CHECK(rows[2].nx == 16);
  CHECK(rows[2].eoc >= 2.5);
}

TEST_CASE("eps bookkeeping") {
  RunConfig cfg;
  cfg.problem = "burgers_sine";
  cfg.t_final = 0.05;
  const RunReport r = Simulation(cfg).run();
  const std::size_t total = r.eps_histogram[0] + r.eps_histogram[1] + r.eps_histogram[2];
  CHECK(total == static_cast<std::size_t>(r.steps) * 20);
  CHECK(r.max_eps_used <= 2e-3);
  CHECK(r.limiter_activations == 0);
}

}  // TEST_SUITE
