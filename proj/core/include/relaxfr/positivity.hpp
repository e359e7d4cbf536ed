#pragma once

#include <cstddef>
#include <span>

#include "relaxfr/equations.hpp"
#include "relaxfr/matrix.hpp"

namespace relaxfr {

struct PositivityConfig {
  bool enabled = true;
  /// Nodes are pulled up to at least floor_fraction times the cell mean.
  double floor_fraction = 0.1;
  double absolute_floor = 1e-13;
  /// Relative floor at extra points (face traces).
  double trace_floor_fraction = 0.05;
  /// Also limit the u block of every inner stage.
  bool per_stage = false;
};

struct LimitResult {
  double theta_density = 1.0;
  double theta_pressure = 1.0;
  bool limited() const noexcept {
    return theta_density < 1.0 || theta_pressure < 1.0;
  }
};

/// Scaling limiter on one element. `states` holds `weights.size()` nodes,
/// each `stride` doubles wide with the conservative Euler state first.
/// Only the leading eq.n_vars() entries of each node are touched. The
/// quadrature mean is preserved. Throws AdmissibilityError (with `element`)
/// if the mean itself is not admissible.
///
/// `extra_points` (rows summing to one, one column per node) adds points
/// such as face traces, held to trace_floor_fraction times the mean.
LimitResult limit_element(std::span<double> states, std::size_t stride,
                          std::span<const double> weights,
                          const CompressibleEuler& eq,
                          const PositivityConfig& cfg, int element = -1,
                          const Matrix* extra_points = nullptr);

}  // namespace relaxfr
