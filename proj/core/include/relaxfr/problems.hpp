#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relaxfr/basis.hpp"
#include "relaxfr/crkfr.hpp"
#include "relaxfr/equations.hpp"
#include "relaxfr/mesh.hpp"

namespace relaxfr {

/// Pointwise initial condition in primitive variables (scalar laws: u).
using InitialCondition =
    std::function<void(double x, double y, std::span<double> prim)>;

struct ProblemSpec {
  std::string name;
  std::string description;
  std::string equation;  // make_equation name
  int dim = 1;
  std::array<double, 2> velocity{1.0, 1.0};  // linear advection only
  double gamma = 1.4;
  std::array<double, 4> domain{0.0, 1.0, 0.0, 1.0};  // x_lo, x_hi, y_lo, y_hi
  int nx = 20;
  int ny = 1;
  int degree = 3;
  NodeKind node_kind = NodeKind::GaussLegendre;
  std::array<BoundaryKind, 4> bc{BoundaryKind::Periodic, BoundaryKind::Periodic,
                                 BoundaryKind::Periodic, BoundaryKind::Periodic};
  double t_final = 1.0;
  double eps_max = 1e-3;
  std::string tableau = "SSP3-IMEX(4,3,3)";
  bool positivity = false;
  /// Also limit every inner stage (needed when stage states leave the
  /// admissible set between full steps).
  bool positivity_per_stage = false;
  /// Uniform eps for every element instead of the indicator.
  std::optional<double> eps_fixed;
  InitialCondition initial;
  /// Exact solution of a scalar problem, when one is available for all t.
  std::function<double(double x, double y, double t)> exact;
};

/// Throws std::invalid_argument for an unknown name.
const ProblemSpec& get_problem(std::string_view name);
std::vector<std::string> problem_names();

std::shared_ptr<const EquationSystem> make_equation(const ProblemSpec& spec);
Mesh make_mesh(const ProblemSpec& spec);

/// Samples the initial condition at every solution point and converts it to
/// conservative variables.
NodalField sample_initial(const CrkfrScheme& scheme, const ProblemSpec& spec);

}  // namespace relaxfr
