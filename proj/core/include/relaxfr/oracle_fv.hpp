#pragma once

#include <functional>
#include <span>
#include <vector>

#include "relaxfr/equations.hpp"
#include "relaxfr/mesh.hpp"

namespace relaxfr {

/// First-order finite volumes for the original law on a 1D mesh: Rusanov
/// flux, forward Euler in time. Shares no code with the FR solver beyond
/// the physical flux.
class FiniteVolumeOracle {
 public:
  /// `u0` gives the conservative state at a point; cell averages use a
  /// 5-point Gauss rule.
  FiniteVolumeOracle(const EquationSystem& eq, const Mesh& mesh,
                     const std::function<void(double, std::span<double>)>& u0);

  /// Largest stable step for the given cfl (<= 0.45).
  double stable_dt(double cfl) const;
  void step(double dt);
  /// Steps to t_final, clipping the last step.
  void advance_to(double t_final, double cfl);

  double time() const noexcept { return time_; }
  int steps() const noexcept { return steps_; }
  int n_cells() const noexcept { return mesh_.nx(); }
  int n_vars() const noexcept { return m_; }
  double cell_center(int i) const;
  /// Cell averages, cell-major.
  const std::vector<double>& averages() const noexcept { return cells_; }
  /// Piecewise-constant value of component `var` at x.
  double value_at(double x, int var = 0) const;

 private:
  void ghost(int cell, Side side, std::span<double> out) const;

  const EquationSystem& eq_;
  Mesh mesh_;
  int m_;
  std::vector<double> cells_;
  std::vector<double> fluxes_;
  double time_ = 0.0;
  int steps_ = 0;
};

/// Cell averages at t_final; throws std::invalid_argument for cfl > 0.45.
std::vector<double> fv_solve(
    const EquationSystem& eq,
    const std::function<void(double, std::span<double>)>& u0,
    const Mesh& mesh, double t_final, double cfl);

/// Smooth Burgers solution u = u0(x - u t) by characteristics, periodic u0
/// allowed. Throws std::domain_error when t >= t_star (first shock time).
double burgers_exact_smooth(const std::function<double(double)>& u0,
                            const std::function<double(double)>& du0,
                            double t_star, double x, double t);

/// u0 = 2 + sin(pi (x - 0.7)), t_star = 1 / pi.
double burgers_sine_exact(double x, double t);

}  // namespace relaxfr
