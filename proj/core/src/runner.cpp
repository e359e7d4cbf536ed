#include "relaxfr/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "relaxfr/errors.hpp"

namespace relaxfr {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad number for " + std::string(key) + ": " + s);
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad integer for " + std::string(key) + ": " + s);
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "off" || s == "no") return false;
  throw std::invalid_argument("bad boolean for " + std::string(key) + ": " + s);
}

}  // namespace

FrameFormat parse_frame_format(std::string_view name) {
  if (name == "csv") return FrameFormat::Csv;
  if (name == "vtk") return FrameFormat::Vtk;
  throw std::invalid_argument("unknown frame format: " + std::string(name));
}

std::string_view to_string(FrameFormat format) {
  return format == FrameFormat::Csv ? "csv" : "vtk";
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (key == "problem") cfg.problem = v;
  else if (key == "nx") cfg.nx = parse_int(key, v);
  else if (key == "ny") cfg.ny = parse_int(key, v);
  else if (key == "degree") cfg.degree = parse_int(key, v);
  else if (key == "node_kind") cfg.node_kind = v;
  else if (key == "tableau") cfg.tableau = v;
  else if (key == "t_final") cfg.t_final = parse_double(key, v);
  else if (key == "eps_max") cfg.eps_max = parse_double(key, v);
  else if (key == "eps_min") cfg.eps_min = parse_double(key, v);
  else if (key == "k") cfg.k = parse_double(key, v);
  else if (key == "eps_fixed") cfg.eps_fixed = parse_double(key, v);
  else if (key == "cfl") cfg.cfl = parse_double(key, v);
  else if (key == "speed_policy") cfg.speed_policy = v;
  else if (key == "a1") cfg.a1 = parse_double(key, v);
  else if (key == "a2") cfg.a2 = parse_double(key, v);
  else if (key == "safety_1d") cfg.safety_1d = parse_double(key, v);
  else if (key == "positivity") cfg.positivity = parse_bool(key, v);
  else if (key == "positivity_per_stage") cfg.positivity_per_stage = parse_bool(key, v);
  else if (key == "floor_fraction") cfg.floor_fraction = parse_double(key, v);
  else if (key == "trace_floor_fraction") cfg.trace_floor_fraction = parse_double(key, v);
  else if (key == "output_every") cfg.output_every = parse_int(key, v);
  else if (key == "output_dir") cfg.output_dir = v;
  else if (key == "format") cfg.format = v;
  else if (key == "deterministic") cfg.deterministic = parse_bool(key, v);
  else throw std::invalid_argument("unknown config key: " + std::string(key));
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    }
    apply_setting(cfg, trim(std::string_view(line).substr(0, eq)),
                  std::string_view(line).substr(eq + 1));
  }
}

void validate(const RunConfig& cfg) {
  const ProblemSpec& spec = get_problem(cfg.problem);
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(!cfg.nx || *cfg.nx > 0, "nx must be positive");
  require(!cfg.ny || *cfg.ny > 0, "ny must be positive");
  require(!cfg.ny || spec.dim == 2 || *cfg.ny == 1, "ny needs a 2D problem");
  require(!cfg.degree || (*cfg.degree >= 1 && *cfg.degree <= 10),
          "degree must lie in [1, 10]");
  if (cfg.node_kind) parse_node_kind(*cfg.node_kind);
  if (cfg.tableau) get_tableau(*cfg.tableau);
  require(!cfg.t_final || *cfg.t_final >= 0.0, "t_final must be >= 0");
  const double eps_max = cfg.eps_max.value_or(spec.eps_max);
  validate(IndicatorConfig{cfg.k, cfg.eps_min, eps_max});
  require(!cfg.eps_fixed || *cfg.eps_fixed > 0.0, "eps_fixed must be positive");
  require(cfg.cfl > 0.0 && std::isfinite(cfg.cfl), "cfl must be positive");
  const SpeedPolicy policy = parse_speed_policy(cfg.speed_policy);
  if (policy == SpeedPolicy::FixedUser) {
    require(cfg.a1 > 0.0 && cfg.a2 > 0.0, "fixed speeds must be positive");
  }
  require(cfg.safety_1d >= 1.0, "safety_1d must be >= 1");
  require(cfg.floor_fraction > 0.0 && cfg.floor_fraction < 1.0,
          "floor_fraction must lie in (0, 1)");
  require(cfg.trace_floor_fraction >= 0.0 && cfg.trace_floor_fraction < 1.0,
          "trace_floor_fraction must lie in [0, 1)");
  require(cfg.output_every >= 0, "output_every must be >= 0");
  parse_frame_format(cfg.format);
}

ProblemSpec resolve_problem(const RunConfig& cfg) {
  validate(cfg);
  ProblemSpec spec = get_problem(cfg.problem);
  if (cfg.nx) spec.nx = *cfg.nx;
  if (cfg.ny) spec.ny = *cfg.ny;
  if (cfg.degree) spec.degree = *cfg.degree;
  if (cfg.node_kind) spec.node_kind = parse_node_kind(*cfg.node_kind);
  if (cfg.tableau) spec.tableau = get_tableau(*cfg.tableau).name;
  if (cfg.t_final) spec.t_final = *cfg.t_final;
  if (cfg.eps_max) spec.eps_max = *cfg.eps_max;
  if (cfg.eps_fixed) spec.eps_fixed = *cfg.eps_fixed;
  if (cfg.positivity) spec.positivity = *cfg.positivity;
  if (cfg.positivity_per_stage) spec.positivity_per_stage = *cfg.positivity_per_stage;
  return spec;
}

void write_report(const RunReport& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += format_double(v[i]);
    }
    return s;
  };
  out << "problem = " << r.problem << '\n'
      << "status = " << r.status << '\n'
      << "message = " << r.message << '\n'
      << "exit_code = " << r.exit_code << '\n'
      << "steps = " << r.steps << '\n'
      << "time = " << format_double(r.time) << '\n'
      << "t_final = " << format_double(r.t_final) << '\n'
      << "wall_seconds = " << format_double(r.wall_seconds) << '\n'
      << "dt_min = " << format_double(r.dt_min) << '\n'
      << "dt_max = " << format_double(r.dt_max) << '\n'
      << "a1 = " << format_double(r.last_speeds[0]) << '\n'
      << "a2 = " << format_double(r.last_speeds[1]) << '\n'
      << "initial_totals = " << list(r.initial_totals) << '\n'
      << "final_totals = " << list(r.final_totals) << '\n'
      << "relative_drift = " << list(r.relative_drift) << '\n'
      << "min_density = " << format_double(r.min_density) << '\n'
      << "min_pressure = " << format_double(r.min_pressure) << '\n'
      << "limiter_activations = " << r.limiter_activations << '\n'
      << "elliptic_violations = " << r.elliptic_violations << '\n'
      << "max_elliptic_lhs = " << format_double(r.max_elliptic_lhs) << '\n'
      << "eps_at_min = " << r.eps_histogram[0] << '\n'
      << "eps_between = " << r.eps_histogram[1] << '\n'
      << "eps_at_max = " << r.eps_histogram[2] << '\n'
      << "max_eps_used = " << format_double(r.max_eps_used) << '\n'
      << "frames = " << r.frames.size() << '\n';
}

namespace {

CrkfrScheme build_scheme(const ProblemSpec& spec) {
  return CrkfrScheme(make_equation(spec), make_mesh(spec),
                     build_basis(spec.degree, spec.node_kind),
                     get_tableau(spec.tableau));
}

}  // namespace

Simulation::Simulation(const RunConfig& cfg)
    : cfg_(cfg), spec_(resolve_problem(cfg)), scheme_(build_scheme(spec_)) {
  indicator_ = IndicatorConfig{cfg.k, cfg.eps_min, spec_.eps_max};
  relaxation_.policy = parse_speed_policy(cfg.speed_policy);
  relaxation_.a = {cfg.a1, cfg.a2};
  relaxation_.safety_1d = cfg.safety_1d;
  positivity_.enabled = spec_.positivity;
  positivity_.floor_fraction = cfg.floor_fraction;
  positivity_.trace_floor_fraction = cfg.trace_floor_fraction;
  positivity_.per_stage = spec_.positivity && spec_.positivity_per_stage;
  if (positivity_.per_stage && !scheme_.equation().is_euler()) {
    throw std::invalid_argument("per-stage positivity needs Euler");
  }

  w_ = equilibrium_init(sample_initial(scheme_, spec_), scheme_.equation());
  eps_.assign(w_.n_elements(), spec_.eps_max);

  report_.problem = spec_.name;
  report_.t_final = spec_.t_final;
  report_.min_density = std::numeric_limits<double>::infinity();
  report_.min_pressure = std::numeric_limits<double>::infinity();
  report_.dt_min = std::numeric_limits<double>::infinity();
  const auto totals = scheme_.integrate(w_);
  const int m = scheme_.equation().n_vars();
  report_.initial_totals.assign(totals.begin(), totals.begin() + m);
  drift_scale_.assign(m, 0.0);
  report_.relative_drift.assign(m, 0.0);
  const double vol = scheme_.mesh().dim() == 1
                         ? scheme_.mesh().dx()
                         : scheme_.mesh().dx() * scheme_.mesh().dy();
  for (int e = 0; e < w_.n_elements(); ++e) {
    for (int q = 0; q < w_.nodes_per_element(); ++q) {
      for (int k = 0; k < m; ++k) {
        drift_scale_[k] += vol * scheme_.weights()[q] * std::abs(w_.node(e, q)[k]);
      }
    }
  }
  for (int k = 0; k < m; ++k) {
    drift_scale_[k] = std::max(drift_scale_[k], std::abs(totals[k]));
  }
  report_.final_totals = report_.initial_totals;
  refresh_eps();
  track_state();
}

void Simulation::refresh_eps() {
  if (spec_.eps_fixed) {
    std::fill(eps_.begin(), eps_.end(), *spec_.eps_fixed);
  } else {
    compute_eps(w_, scheme_.equation(), scheme_.basis(), indicator_, eps_);
  }
}

void Simulation::track_state() {
  const EquationSystem& eq = scheme_.equation();
  if (const auto* euler = dynamic_cast<const CompressibleEuler*>(&eq)) {
    const int m = eq.n_vars();
    for (int e = 0; e < w_.n_elements(); ++e) {
      for (int q = 0; q < w_.nodes_per_element(); ++q) {
        const auto u = w_.node(e, q).first(m);
        report_.min_density = std::min(report_.min_density, u[0]);
        report_.min_pressure = std::min(report_.min_pressure, euler->pressure(u));
      }
    }
  }
  const auto totals = scheme_.integrate(w_);
  for (std::size_t k = 0; k < report_.initial_totals.size(); ++k) {
    report_.final_totals[k] = totals[k];
    const double diff = std::abs(totals[k] - report_.initial_totals[k]);
    const double drift = drift_scale_[k] > 0.0 ? diff / drift_scale_[k] : diff;
    report_.relative_drift[k] = std::max(report_.relative_drift[k], drift);
  }
  report_.time = w_.time;
}

double Simulation::step() {
  if (finished()) return 0.0;
  refresh_eps();
  for (double e : eps_) {
    const std::size_t bin = e <= indicator_.eps_min ? 0
                            : e >= indicator_.eps_max ? 2
                                                      : 1;
    ++report_.eps_histogram[bin];
    report_.max_eps_used = std::max(report_.max_eps_used, e);
  }
  const auto a = select_speeds(w_, scheme_.layout(), scheme_.equation(), relaxation_);
  double dt = compute_dt(scheme_.mesh(), spec_.degree, a, cfg_.cfl);
  bool last = false;
  if (w_.time + dt >= spec_.t_final) {
    dt = spec_.t_final - w_.time;
    last = true;
  }
  const EllipticReport ell =
      check_elliptic_condition(w_, scheme_.layout(), scheme_.equation(), a);
  report_.elliptic_violations += ell.violations;
  report_.max_elliptic_lhs = std::max(report_.max_elliptic_lhs, ell.max_lhs);

  scheme_.step(w_, dt, a, eps_, positivity_.per_stage ? &positivity_ : nullptr);
  if (positivity_.enabled) {
    report_.limiter_activations +=
        scheme_.apply_positivity(w_, positivity_).limited_elements;
  }
  if (last) w_.time = spec_.t_final;

  ++report_.steps;
  report_.dt_min = std::min(report_.dt_min, dt);
  report_.dt_max = std::max(report_.dt_max, dt);
  report_.last_speeds = a;
  track_state();
  return dt;
}

std::filesystem::path Simulation::write_frame(int index) const {
  const FrameFormat format = parse_frame_format(cfg_.format);
  const std::filesystem::path path =
      std::filesystem::path(cfg_.output_dir) / frame_name(index, w_.time, format);
  relaxfr::write_frame(scheme_, w_, eps_, format, path);
  return path;
}

RunReport Simulation::run() {
  const auto start = std::chrono::steady_clock::now();
  const bool output = !cfg_.output_dir.empty();
  if (output) std::filesystem::create_directories(cfg_.output_dir);
  int frame = 0;
  try {
    if (output) report_.frames.push_back(write_frame(frame++).string());
    while (!finished()) {
      step();
      const bool cadence =
          cfg_.output_every > 0 && report_.steps % cfg_.output_every == 0;
      if (output && (cadence || finished())) {
        report_.frames.push_back(write_frame(frame++).string());
      }
    }
  } catch (const AdmissibilityError& e) {
    report_.status = "admissibility";
    report_.exit_code = 2;
    report_.message = "step " + std::to_string(report_.steps + 1) + ": " + e.what();
  } catch (const NonFiniteError& e) {
    report_.status = "nonfinite";
    report_.exit_code = 3;
    report_.message = "step " + std::to_string(report_.steps + 1) + ": " + e.what();
  }
  report_.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report_.steps == 0) report_.dt_min = 0.0;
  if (!scheme_.equation().is_euler()) {
    report_.min_density = 0.0;
    report_.min_pressure = 0.0;
  }
  if (output) write_report(report_, std::filesystem::path(cfg_.output_dir) / "report.txt");
  return report_;
}

std::string frame_name(int index, double time, FrameFormat format) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d", index);
  char tbuf[40];
  const auto res = std::to_chars(tbuf, tbuf + sizeof tbuf, time);
  return "frame_" + std::string(buf) + "_t" + std::string(tbuf, res.ptr) + "." +
         std::string(to_string(format));
}

void write_frame(const CrkfrScheme& scheme, const NodalField& w,
                 std::span<const double> eps, FrameFormat format,
                 const std::filesystem::path& path) {
  const EquationSystem& eq = scheme.equation();
  const Mesh& mesh = scheme.mesh();
  const int m = eq.n_vars();
  const auto names = eq.primitive_names();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::vector<double> prim(m);

  if (format == FrameFormat::Csv) {
    out << (mesh.dim() == 1 ? "x" : "x,y");
    for (const auto& n : names) out << ',' << n;
    out << ",eps\n";
    for (int e = 0; e < w.n_elements(); ++e) {
      for (int q = 0; q < w.nodes_per_element(); ++q) {
        const auto [x, y] = scheme.node_coords(e, q);
        eq.to_primitive(w.node(e, q).first(m), prim);
        out << format_double(x);
        if (mesh.dim() == 2) out << ',' << format_double(y);
        for (double p : prim) out << ',' << format_double(p);
        out << ',' << format_double(eps[e]) << '\n';
      }
    }
  } else {
    const auto wts = scheme.weights();
    std::vector<double> mean(m);
    std::vector<std::vector<double>> cells(m, std::vector<double>(w.n_elements()));
    for (int e = 0; e < w.n_elements(); ++e) {
      std::fill(mean.begin(), mean.end(), 0.0);
      for (int q = 0; q < w.nodes_per_element(); ++q) {
        const auto u = w.node(e, q);
        for (int k = 0; k < m; ++k) mean[k] += wts[q] * u[k];
      }
      eq.to_primitive(mean, prim);
      for (int k = 0; k < m; ++k) cells[k][e] = prim[k];
    }
    const double dy = mesh.dim() == 2 ? mesh.dy() : mesh.dx();
    out << "# vtk DataFile Version 3.0\n"
        << "relaxfr t=" << format_double(w.time) << "\n"
        << "ASCII\nDATASET STRUCTURED_POINTS\n"
        << "DIMENSIONS " << mesh.nx() + 1 << ' ' << mesh.ny() + 1 << " 1\n"
        << "ORIGIN " << format_double(mesh.x_lo()) << ' '
        << format_double(mesh.dim() == 2 ? mesh.y_lo() : 0.0) << " 0\n"
        << "SPACING " << format_double(mesh.dx()) << ' ' << format_double(dy)
        << " 1\n"
        << "CELL_DATA " << w.n_elements() << '\n';
    auto scalars = [&](const std::string& name, auto value) {
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (int e = 0; e < w.n_elements(); ++e) out << format_double(value(e)) << '\n';
    };
    for (int k = 0; k < m; ++k) {
      scalars(names[k], [&](int e) { return cells[k][e]; });
    }
    scalars("eps", [&](int e) { return eps[e]; });
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

double l2_error(const CrkfrScheme& scheme, const NodalField& w,
                const std::function<double(double, double)>& exact) {
  const Mesh& mesh = scheme.mesh();
  const double vol = mesh.dim() == 1 ? mesh.dx() : mesh.dx() * mesh.dy();
  const auto wts = scheme.weights();
  double sum = 0.0;
  for (int e = 0; e < w.n_elements(); ++e) {
    for (int q = 0; q < w.nodes_per_element(); ++q) {
      const auto [x, y] = scheme.node_coords(e, q);
      const double d = w.node(e, q)[0] - exact(x, y);
      sum += vol * wts[q] * d * d;
    }
  }
  return std::sqrt(sum);
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int levels) {
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  const ProblemSpec spec = resolve_problem(base);
  if (!spec.exact) {
    throw std::invalid_argument("problem has no exact solution: " + spec.name);
  }
  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < levels; ++level) {
    RunConfig cfg = base;
    cfg.output_dir.clear();
    cfg.nx = spec.nx << level;
    if (spec.dim == 2) cfg.ny = spec.ny << level;
    Simulation sim(cfg);
    const RunReport report = sim.run();
    if (report.exit_code != 0) {
      throw std::runtime_error("convergence run failed: " + report.message);
    }
    const double t = sim.time();
    ConvergenceRow row;
    row.nx = *cfg.nx;
    row.l2_error = l2_error(sim.scheme(), sim.state(), [&](double x, double y) {
      return spec.exact(x, y, t);
    });
    if (!rows.empty()) row.eoc = std::log2(rows.back().l2_error / row.l2_error);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace relaxfr
