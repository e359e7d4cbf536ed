#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "relaxfr/equations.hpp"
#include "relaxfr/field.hpp"

namespace relaxfr {

/// Augmented state w = (u, v_1[, v_2]); every block has n_phys components.
struct AugmentedLayout {
  int n_phys = 1;
  int dim = 1;

  int n_total() const noexcept { return n_phys * (dim + 1); }
  int u_offset() const noexcept { return 0; }
  int v_offset(int direction) const noexcept {
    return n_phys * (direction + 1);
  }
};

enum class SpeedPolicy { FixedUser, Sqrt2TimesMaxEig };

SpeedPolicy parse_speed_policy(std::string_view name);

struct RelaxationConfig {
  std::array<double, 2> a{1.0, 1.0};
  SpeedPolicy policy = SpeedPolicy::Sqrt2TimesMaxEig;
  /// Multiplier on max |eig| in 1D, where the sqrt(2) factor is not needed.
  double safety_1d = 1.1;
  /// Lower bound on the relaxation speed (guards a vanishing wave speed).
  double a_floor = 1e-12;
};

/// Linear relaxation flux: direction d returns (v_d, ..., a_d^2 u, ...) with
/// a_d^2 u placed in the v_d block and zeros elsewhere.
void augment_flux(const AugmentedLayout& layout, std::span<const double> w,
                  int direction, std::array<double, 2> a,
                  std::span<double> out);

/// Stiff source: zero in the u block, -(v_d - f_d(u)) / eps in block v_d.
void relaxation_source(const AugmentedLayout& layout,
                       std::span<const double> w, double eps,
                       const EquationSystem& eq, std::span<double> out);

/// Closed-form solve of the diagonally implicit source stage.
///
/// On entry the u block of `w` holds the final stage value and the v blocks
/// hold the explicit part v_expl. On exit the v blocks hold
///   v = (v_expl + (dt a_ii / eps) f(u)) / (1 + dt a_ii / eps).
/// If `dt_source` is non-empty it receives dt * s(w) for the solved state,
/// computed from the gap v - f(u) without forming 1/eps when a_ii > 0.
/// Throws for eps <= 0.
void implicit_stage_solve(const AugmentedLayout& layout, std::span<double> w,
                          double a_ii, double dt, double eps,
                          const EquationSystem& eq,
                          std::span<double> dt_source = {});

/// Relaxation speeds for the next step: FixedUser returns cfg.a, otherwise
/// sqrt(2) (2D) or cfg.safety_1d (1D) times the largest wave speed over all
/// solution points. Scalar laws use the hull of the solution values.
std::array<double, 2> select_speeds(const NodalField& w,
                                    const AugmentedLayout& layout,
                                    const EquationSystem& eq,
                                    const RelaxationConfig& cfg);

struct EllipticReport {
  double max_lhs = 0.0;
  std::size_t violations = 0;
  std::size_t points = 0;
};

/// Pointwise |f_1'|^2 / a_1^2 + |f_2'|^2 / a_2^2 <= 1 using eigenvalue
/// surrogates for the Jacobian norms. Diagnostic only.
EllipticReport check_elliptic_condition(const NodalField& w,
                                        const AugmentedLayout& layout,
                                        const EquationSystem& eq,
                                        std::array<double, 2> a);

/// Augmented field with v_d = f_d(u0) at every node.
NodalField equilibrium_init(const NodalField& u0, const EquationSystem& eq);

}  // namespace relaxfr
