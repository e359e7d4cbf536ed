#include "relaxfr/equations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "relaxfr/errors.hpp"

namespace relaxfr {

void EquationSystem::flux(std::span<const double> u, int direction,
                          std::span<double> out) const {
  if (!admissible(u)) {
    throw AdmissibilityError(std::string(name()) +
                             ": flux of a non-admissible state");
  }
  flux_unchecked(u, direction, out);
}

std::vector<double> EquationSystem::flux(std::span<const double> u,
                                         int direction) const {
  std::vector<double> out(n_vars());
  flux(u, direction, out);
  return out;
}

double EquationSystem::max_abs_eig_between(std::span<const double> a,
                                           std::span<const double> b,
                                           int direction) const {
  return std::max(max_abs_eig(a, direction), max_abs_eig(b, direction));
}

bool EquationSystem::admissible(std::span<const double> u) const {
  return std::all_of(u.begin(), u.end(),
                     [](double x) { return std::isfinite(x); });
}

void EquationSystem::to_primitive(std::span<const double> u,
                                  std::span<double> prim) const {
  std::copy(u.begin(), u.end(), prim.begin());
}

void EquationSystem::to_conservative(std::span<const double> prim,
                                     std::span<double> u) const {
  std::copy(prim.begin(), prim.end(), u.begin());
}

std::vector<std::string> EquationSystem::primitive_names() const {
  std::vector<std::string> names;
  for (int k = 0; k < n_vars(); ++k) names.push_back("u" + std::to_string(k));
  if (n_vars() == 1) names[0] = "u";
  return names;
}

// ---------------------------------------------------------------- scalar laws

ScalarLaw::ScalarLaw(int dim) : dim_(dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
}

void ScalarLaw::flux_unchecked(std::span<const double> u, int direction,
                               std::span<double> out) const {
  out[0] = f(u[0], direction);
}

double ScalarLaw::max_abs_eig(std::span<const double> u, int direction) const {
  if (!admissible(u)) {
    throw AdmissibilityError(std::string(name()) + ": non-finite state");
  }
  return std::abs(df(u[0], direction));
}

double ScalarLaw::max_abs_eig_between(std::span<const double> a,
                                      std::span<const double> b,
                                      int direction) const {
  return max_abs_df_on(std::min(a[0], b[0]), std::max(a[0], b[0]), direction);
}

double ScalarLaw::max_abs_df_on(double lo, double hi, int direction) const {
  constexpr int kSamples = 512;
  double m = std::max(std::abs(df(lo, direction)), std::abs(df(hi, direction)));
  for (int i = 1; i < kSamples; ++i) {
    const double u = lo + (hi - lo) * i / kSamples;
    m = std::max(m, std::abs(df(u, direction)));
  }
  return m;
}

LinearAdvection::LinearAdvection(int dim, std::array<double, 2> velocity)
    : ScalarLaw(dim), velocity_(velocity) {
  if (dim == 1) velocity_[1] = 0.0;
}

double LinearAdvection::max_abs_df_on(double, double, int d) const {
  return std::abs(velocity_[d]);
}

double Burgers::max_abs_df_on(double lo, double hi, int) const {
  return std::max(std::abs(lo), std::abs(hi));
}

double BuckleyLeverett::f(double u, int) const {
  const double a = 4.0 * u * u;
  return a / (a + (1.0 - u) * (1.0 - u));
}

double BuckleyLeverett::df(double u, int) const {
  const double d = 4.0 * u * u + (1.0 - u) * (1.0 - u);
  return 8.0 * u * (1.0 - u) / (d * d);
}

double BuckleyLeverett::max_abs_df_on(double lo, double hi, int d) const {
  static const std::array<double, 3> critical = [] {
    std::array<double, 3> roots{-0.24, 0.29, 1.45};
    for (double& r : roots) {
      for (int it = 0; it < 50; ++it) {
        r -= (10.0 * r * r * r - 15.0 * r * r + 1.0) / (30.0 * r * r - 30.0 * r);
      }
    }
    return roots;
  }();
  if (lo > hi) std::swap(lo, hi);
  double m = std::max(std::abs(df(lo, d)), std::abs(df(hi, d)));
  for (double r : critical) {
    if (r > lo && r < hi) m = std::max(m, std::abs(df(r, d)));
  }
  return m;
}

// ---------------------------------------------------------------------- Euler

CompressibleEuler::CompressibleEuler(int dim, double gamma)
    : dim_(dim), gamma_(gamma) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
}

double CompressibleEuler::pressure(std::span<const double> u) const {
  const double rho = u[0];
  double kinetic = 0.0;
  for (int d = 0; d < dim_; ++d) kinetic += u[1 + d] * u[1 + d];
  kinetic *= 0.5 / rho;
  return (gamma_ - 1.0) * (u[dim_ + 1] - kinetic);
}

double CompressibleEuler::sound_speed(std::span<const double> u) const {
  return std::sqrt(gamma_ * pressure(u) / u[0]);
}

void CompressibleEuler::flux_unchecked(std::span<const double> u, int direction,
                                       std::span<double> out) const {
  const double rho = u[0];
  const double vn = u[1 + direction] / rho;
  const double p = pressure(u);
  out[0] = u[1 + direction];
  for (int d = 0; d < dim_; ++d) out[1 + d] = u[1 + d] * vn;
  out[1 + direction] += p;
  out[dim_ + 1] = vn * (u[dim_ + 1] + p);
}

double CompressibleEuler::max_abs_eig(std::span<const double> u,
                                      int direction) const {
  if (!admissible(u)) {
    throw AdmissibilityError("euler: wave speed of a non-admissible state");
  }
  return std::abs(u[1 + direction] / u[0]) + sound_speed(u);
}

bool CompressibleEuler::admissible(std::span<const double> u) const {
  if (!EquationSystem::admissible(u)) return false;
  return u[0] > 0.0 && pressure(u) > 0.0;
}

double CompressibleEuler::indicator_quantity(std::span<const double> u) const {
  return u[0] * pressure(u);
}

void CompressibleEuler::to_primitive(std::span<const double> u,
                                     std::span<double> prim) const {
  prim[0] = u[0];
  for (int d = 0; d < dim_; ++d) prim[1 + d] = u[1 + d] / u[0];
  prim[dim_ + 1] = pressure(u);
}

void CompressibleEuler::to_conservative(std::span<const double> prim,
                                        std::span<double> u) const {
  const double rho = prim[0];
  double kinetic = 0.0;
  u[0] = rho;
  for (int d = 0; d < dim_; ++d) {
    u[1 + d] = rho * prim[1 + d];
    kinetic += prim[1 + d] * prim[1 + d];
  }
  u[dim_ + 1] = prim[dim_ + 1] / (gamma_ - 1.0) + 0.5 * rho * kinetic;
}

std::vector<std::string> CompressibleEuler::primitive_names() const {
  if (dim_ == 1) return {"rho", "v1", "p"};
  return {"rho", "v1", "v2", "p"};
}

std::optional<std::vector<double>> CompressibleEuler::reflection_parity(
    int normal_direction) const {
  std::vector<double> parity(n_vars(), 1.0);
  parity[1 + normal_direction] = -1.0;
  return parity;
}

std::shared_ptr<const EquationSystem> make_equation(
    std::string_view name, int dim, double gamma,
    std::array<double, 2> velocity) {
  if (name == "linear_advection") {
    return std::make_shared<LinearAdvection>(dim, velocity);
  }
  if (name == "burgers") return std::make_shared<Burgers>(dim);
  if (name == "buckley_leverett") return std::make_shared<BuckleyLeverett>(dim);
  if (name == "euler") return std::make_shared<CompressibleEuler>(dim, gamma);
  throw std::invalid_argument("unknown equation: " + std::string(name));
}

}  // namespace relaxfr
