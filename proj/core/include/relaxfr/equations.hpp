#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relaxfr {

/// A physical system  u_t + f_1(u)_x + f_2(u)_y = 0  that gets relaxed.
///
/// Directions are 0-based (0 = x, 1 = y). The checked entry points
/// (`flux`, `max_abs_eig`) throw AdmissibilityError; the `_unchecked` flux is
/// for hot loops that validate states separately.
class EquationSystem {
 public:
  virtual ~EquationSystem() = default;

  virtual std::string_view name() const = 0;
  virtual int n_vars() const = 0;
  virtual int dim() const = 0;

  virtual void flux_unchecked(std::span<const double> u, int direction,
                              std::span<double> out) const = 0;
  void flux(std::span<const double> u, int direction,
            std::span<double> out) const;
  std::vector<double> flux(std::span<const double> u, int direction) const;

  /// Spectral radius of the flux Jacobian f_direction'(u).
  virtual double max_abs_eig(std::span<const double> u,
                             int direction) const = 0;

  /// Bound on the wave speed between two states. Scalar laws take the max of
  /// |f'| over the interval spanned by the states; systems use the endpoints.
  virtual double max_abs_eig_between(std::span<const double> a,
                                     std::span<const double> b,
                                     int direction) const;

  virtual bool admissible(std::span<const double> u) const;

  /// Scalar whose modal decay drives the smoothness indicator.
  virtual double indicator_quantity(std::span<const double> u) const {
    return u[0];
  }

  virtual void to_primitive(std::span<const double> u,
                            std::span<double> prim) const;
  virtual void to_conservative(std::span<const double> prim,
                               std::span<double> u) const;
  virtual std::vector<std::string> primitive_names() const;

  /// Per-component signs of the state under reflection across a wall normal
  /// to `normal_direction`; empty when walls are not supported.
  virtual std::optional<std::vector<double>> reflection_parity(
      int normal_direction) const {
    (void)normal_direction;
    return std::nullopt;
  }

  virtual bool is_euler() const { return false; }
};

/// Scalar law with flux f(u) per direction and analytic derivative.
class ScalarLaw : public EquationSystem {
 public:
  explicit ScalarLaw(int dim);
  int n_vars() const override { return 1; }
  int dim() const override { return dim_; }

  virtual double f(double u, int direction) const = 0;
  virtual double df(double u, int direction) const = 0;

  void flux_unchecked(std::span<const double> u, int direction,
                      std::span<double> out) const override;
  double max_abs_eig(std::span<const double> u, int direction) const override;
  double max_abs_eig_between(std::span<const double> a,
                             std::span<const double> b,
                             int direction) const override;
  /// max |f'| over [lo, hi]; the default samples densely.
  virtual double max_abs_df_on(double lo, double hi, int direction) const;

 private:
  int dim_;
};

class LinearAdvection final : public ScalarLaw {
 public:
  LinearAdvection(int dim, std::array<double, 2> velocity);
  std::string_view name() const override { return "linear_advection"; }
  double f(double u, int d) const override { return velocity_[d] * u; }
  double df(double, int d) const override { return velocity_[d]; }
  double max_abs_df_on(double, double, int d) const override;
  std::array<double, 2> velocity() const { return velocity_; }

 private:
  std::array<double, 2> velocity_;
};

class Burgers final : public ScalarLaw {
 public:
  explicit Burgers(int dim = 1) : ScalarLaw(dim) {}
  std::string_view name() const override { return "burgers"; }
  double f(double u, int) const override { return 0.5 * u * u; }
  double df(double u, int) const override { return u; }
  double max_abs_df_on(double lo, double hi, int) const override;
};

/// f(u) = 4u^2 / (4u^2 + (1 - u)^2); non-convex.
class BuckleyLeverett final : public ScalarLaw {
 public:
  explicit BuckleyLeverett(int dim = 1) : ScalarLaw(dim) {}
  std::string_view name() const override { return "buckley_leverett"; }
  double f(double u, int) const override;
  double df(double u, int) const override;
  /// Exact: f' has its extrema where 10u^3 - 15u^2 + 1 = 0.
  double max_abs_df_on(double lo, double hi, int direction) const override;
};

/// Compressible Euler for an ideal gas. Conservative state
/// (rho, m_1[, m_2], E); primitive (rho, v_1[, v_2], p).
class CompressibleEuler final : public EquationSystem {
 public:
  explicit CompressibleEuler(int dim, double gamma = 1.4);

  std::string_view name() const override { return "euler"; }
  int n_vars() const override { return dim_ + 2; }
  int dim() const override { return dim_; }
  double gamma() const noexcept { return gamma_; }

  double pressure(std::span<const double> u) const;
  double sound_speed(std::span<const double> u) const;

  void flux_unchecked(std::span<const double> u, int direction,
                      std::span<double> out) const override;
  double max_abs_eig(std::span<const double> u, int direction) const override;
  bool admissible(std::span<const double> u) const override;
  /// rho * p
  double indicator_quantity(std::span<const double> u) const override;

  void to_primitive(std::span<const double> u,
                    std::span<double> prim) const override;
  void to_conservative(std::span<const double> prim,
                       std::span<double> u) const override;
  std::vector<std::string> primitive_names() const override;
  std::optional<std::vector<double>> reflection_parity(
      int normal_direction) const override;
  bool is_euler() const override { return true; }

 private:
  int dim_;
  double gamma_;
};

/// Builds an equation by name: linear_advection, burgers, buckley_leverett,
/// euler. `velocity` is only read for linear advection.
std::shared_ptr<const EquationSystem> make_equation(
    std::string_view name, int dim, double gamma = 1.4,
    std::array<double, 2> velocity = {1.0, 1.0});

}  // namespace relaxfr
