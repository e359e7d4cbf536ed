#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relaxfr/crkfr.hpp"
#include "relaxfr/indicator.hpp"
#include "relaxfr/positivity.hpp"
#include "relaxfr/problems.hpp"
#include "relaxfr/relaxation.hpp"

namespace relaxfr {

enum class FrameFormat { Csv, Vtk };
FrameFormat parse_frame_format(std::string_view name);
std::string_view to_string(FrameFormat format);

/// A problem name plus overrides of its registry defaults.
struct RunConfig {
  std::string problem;
  std::optional<int> nx, ny, degree;
  std::optional<std::string> node_kind;
  std::optional<std::string> tableau;
  std::optional<double> t_final;
  std::optional<double> eps_max;
  double eps_min = 1e-12;
  double k = 2e5;
  /// Uniform eps on every element; disables the indicator.
  std::optional<double> eps_fixed;
  /// Scales compute_dt. Linear stability for N = 3 ends near 0.7 in 1D and
  /// 0.34 in 2D; 0.3 also keeps the time error below the spatial one.
  double cfl = 0.3;
  /// "auto" or "fixed"; fixed reads a1 and a2.
  std::string speed_policy = "auto";
  double a1 = 1.0;
  double a2 = 1.0;
  double safety_1d = 1.1;
  std::optional<bool> positivity;
  std::optional<bool> positivity_per_stage;
  double floor_fraction = 0.1;
  double trace_floor_fraction = 0.05;
  /// Write a frame every this many steps; 0 writes only the first and last.
  int output_every = 0;
  std::string output_dir;  // empty: no files
  std::string format = "csv";
  bool deterministic = true;
};

/// Applies one `key = value` setting. Throws std::invalid_argument for an
/// unknown key or a malformed value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
/// Reads `key = value` lines (`#` starts a comment) into cfg.
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);
/// Checks every override against the registries. Throws std::invalid_argument.
void validate(const RunConfig& cfg);
/// Registry entry with the overrides applied.
ProblemSpec resolve_problem(const RunConfig& cfg);

struct RunReport {
  std::string problem;
  std::string status = "ok";  // ok | admissibility | nonfinite
  std::string message;
  int exit_code = 0;
  int steps = 0;
  double time = 0.0;
  double t_final = 0.0;
  double wall_seconds = 0.0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  std::array<double, 2> last_speeds{0.0, 0.0};
  std::vector<double> initial_totals;  // integrals of the u block
  std::vector<double> final_totals;
  /// Per component, max over steps of |total - initial| / max(|initial|,
  /// initial L1 norm of the component).
  std::vector<double> relative_drift;
  double min_density = 0.0;  // Euler only
  double min_pressure = 0.0;
  std::size_t limiter_activations = 0;
  std::size_t elliptic_violations = 0;
  double max_elliptic_lhs = 0.0;
  /// Element-steps at eps_min, strictly between, and at eps_max.
  std::array<std::size_t, 3> eps_histogram{0, 0, 0};
  double max_eps_used = 0.0;
  std::vector<std::string> frames;
};

void write_report(const RunReport& report, const std::filesystem::path& path);

/// One configured run. Exposes the state between steps for diagnostics.
class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);

  const RunConfig& config() const noexcept { return cfg_; }
  const ProblemSpec& problem() const noexcept { return spec_; }
  const CrkfrScheme& scheme() const noexcept { return scheme_; }
  const NodalField& state() const noexcept { return w_; }
  std::span<const double> eps() const noexcept { return eps_; }
  double time() const noexcept { return w_.time; }
  bool finished() const noexcept { return w_.time >= spec_.t_final; }
  const RunReport& report() const noexcept { return report_; }

  /// One full step; the last one lands exactly on t_final. Returns dt.
  /// Throws AdmissibilityError / NonFiniteError.
  double step();
  /// Steps to t_final, writing frames if an output directory is set.
  /// Errors are caught and reported through status and exit_code.
  RunReport run();
  /// Writes the current state as frame `index`.
  std::filesystem::path write_frame(int index) const;

 private:
  void refresh_eps();
  void track_state();

  RunConfig cfg_;
  ProblemSpec spec_;
  CrkfrScheme scheme_;
  IndicatorConfig indicator_;
  RelaxationConfig relaxation_;
  PositivityConfig positivity_;
  NodalField w_;
  std::vector<double> eps_;
  std::vector<double> drift_scale_;
  RunReport report_;
};

/// Frame of the u block: CSV of every solution point (primitives for Euler)
/// with the element eps, or legacy VTK structured points of cell-averaged
/// primitives.
void write_frame(const CrkfrScheme& scheme, const NodalField& w,
                 std::span<const double> eps, FrameFormat format,
                 const std::filesystem::path& path);

/// Frame file name: frame_<index>_t<time>.<ext>
std::string frame_name(int index, double time, FrameFormat format);

/// L2 norm over the domain of (first u component - exact(x, y)), by the
/// solution-point quadrature.
double l2_error(const CrkfrScheme& scheme, const NodalField& w,
                const std::function<double(double, double)>& exact);

struct ConvergenceRow {
  int nx = 0;
  double l2_error = 0.0;
  double eoc = 0.0;  // 0 on the first level
};

/// Runs `levels` grids starting from the configured nx, doubling each time,
/// and measures the L2 error against the problem's exact solution.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int levels);

/// 17 significant digits; parses back to the same double.
std::string format_double(double value);

}  // namespace relaxfr
