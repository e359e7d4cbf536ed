#include "relaxfr/oracle_fv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "relaxfr/errors.hpp"

namespace relaxfr {

FiniteVolumeOracle::FiniteVolumeOracle(
    const EquationSystem& eq, const Mesh& mesh,
    const std::function<void(double, std::span<double>)>& u0)
    : eq_(eq), mesh_(mesh), m_(eq.n_vars()) {
  if (mesh.dim() != 1) {
    throw std::invalid_argument("finite volume oracle is 1D only");
  }
  // 5-point Gauss-Legendre on [-1, 1]
  const double r1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double r2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  const double pts[5] = {-r2, -r1, 0.0, r1, r2};
  const double wts[5] = {w2, w1, 128.0 / 225.0, w1, w2};

  const int n = mesh.nx();
  cells_.assign(static_cast<std::size_t>(n) * m_, 0.0);
  fluxes_.assign(static_cast<std::size_t>(n + 1) * m_, 0.0);
  std::vector<double> u(m_);
  for (int i = 0; i < n; ++i) {
    const double xc = cell_center(i);
    for (int g = 0; g < 5; ++g) {
      u0(xc + 0.5 * mesh.dx() * pts[g], u);
      for (int k = 0; k < m_; ++k) cells_[i * m_ + k] += 0.5 * wts[g] * u[k];
    }
    if (!eq.admissible(std::span<const double>(&cells_[i * m_], m_))) {
      throw AdmissibilityError("inadmissible initial cell average", i);
    }
  }
}

double FiniteVolumeOracle::cell_center(int i) const {
  return mesh_.x_lo() + (i + 0.5) * mesh_.dx();
}

double FiniteVolumeOracle::value_at(double x, int var) const {
  const int n = mesh_.nx();
  int i = static_cast<int>(std::floor((x - mesh_.x_lo()) / mesh_.dx()));
  i = std::clamp(i, 0, n - 1);
  return cells_[i * m_ + var];
}

void FiniteVolumeOracle::ghost(int cell, Side side, std::span<double> out) const {
  const double* c = &cells_[cell * m_];
  const auto parity = eq_.reflection_parity(0);
  if (!parity) {
    throw std::invalid_argument("walls need a reflection parity");
  }
  (void)side;
  for (int k = 0; k < m_; ++k) out[k] = (*parity)[k] * c[k];
}

double FiniteVolumeOracle::stable_dt(double cfl) const {
  if (!(cfl > 0.0) || cfl > 0.45) {
    throw std::invalid_argument("oracle cfl must lie in (0, 0.45]");
  }
  double s = 0.0;
  for (int i = 0; i < mesh_.nx(); ++i) {
    s = std::max(s, eq_.max_abs_eig(std::span<const double>(&cells_[i * m_], m_), 0));
  }
  // speeds between neighbours matter for non-convex scalar fluxes
  const int n = mesh_.nx();
  const bool periodic = mesh_.boundary(Side::Left) == BoundaryKind::Periodic;
  for (int i = 0; i < (periodic ? n : n - 1); ++i) {
    const int j = (i + 1) % n;
    s = std::max(s, eq_.max_abs_eig_between(
                        std::span<const double>(&cells_[i * m_], m_),
                        std::span<const double>(&cells_[j * m_], m_), 0));
  }
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl * mesh_.dx() / s;
}

void FiniteVolumeOracle::step(double dt) {
  const int n = mesh_.nx();
  const bool periodic = mesh_.boundary(Side::Left) == BoundaryKind::Periodic;
  std::vector<double> ul(m_), ur(m_), fl(m_), fr(m_);
  for (int f = 0; f <= n; ++f) {
    // face f sits between cells f - 1 and f
    if (f == 0) {
      if (periodic) {
        std::copy_n(&cells_[(n - 1) * m_], m_, ul.begin());
      } else {
        ghost(0, Side::Left, ul);
      }
    } else {
      std::copy_n(&cells_[(f - 1) * m_], m_, ul.begin());
    }
    if (f == n) {
      if (periodic) {
        std::copy_n(&cells_[0], m_, ur.begin());
      } else {
        ghost(n - 1, Side::Right, ur);
      }
    } else {
      std::copy_n(&cells_[f * m_], m_, ur.begin());
    }
    eq_.flux(ul, 0, fl);
    eq_.flux(ur, 0, fr);
    const double lam = eq_.max_abs_eig_between(ul, ur, 0);
    for (int k = 0; k < m_; ++k) {
      fluxes_[f * m_ + k] = 0.5 * (fl[k] + fr[k]) - 0.5 * lam * (ur[k] - ul[k]);
    }
  }
  const double r = dt / mesh_.dx();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m_; ++k) {
      cells_[i * m_ + k] -= r * (fluxes_[(i + 1) * m_ + k] - fluxes_[i * m_ + k]);
    }
    const std::span<const double> c(&cells_[i * m_], m_);
    for (double v : c) {
      if (!std::isfinite(v)) throw NonFiniteError("oracle produced NaN/Inf", i);
    }
    if (!eq_.admissible(c)) {
      throw AdmissibilityError("oracle state left the admissible set", i);
    }
  }
  time_ += dt;
  ++steps_;
}

void FiniteVolumeOracle::advance_to(double t_final, double cfl) {
  while (time_ < t_final) {
    double dt = stable_dt(cfl);
    bool last = false;
    if (time_ + dt >= t_final) {
      dt = t_final - time_;
      last = true;
    }
    step(dt);
    if (last) time_ = t_final;
  }
}

std::vector<double> fv_solve(
    const EquationSystem& eq,
    const std::function<void(double, std::span<double>)>& u0,
    const Mesh& mesh, double t_final, double cfl) {
  if (cfl > 0.45) throw std::invalid_argument("oracle cfl must be <= 0.45");
  FiniteVolumeOracle fv(eq, mesh, u0);
  fv.advance_to(t_final, cfl);
  return fv.averages();
}

double burgers_exact_smooth(const std::function<double(double)>& u0,
                            const std::function<double(double)>& du0,
                            double t_star, double x, double t) {
  if (t < 0.0) throw std::domain_error("negative time");
  if (t >= t_star) throw std::domain_error("time at or past shock formation");
  if (t == 0.0) return u0(x);
  // g(u) = u - u0(x - u t); g' = 1 + t u0'(x - u t) > 0 for t < t_star, so
  // the root is unique and bisection on an expanding bracket finds it.
  auto g = [&](double u) { return u - u0(x - u * t); };
  const double start = u0(x);
  double a = start - 1.0;
  double b = start + 1.0;
  for (int i = 0; i < 60 && g(a) > 0.0; ++i) a -= 2.0 * (b - a);
  for (int i = 0; i < 60 && g(b) < 0.0; ++i) b += 2.0 * (b - a);
  double u = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const double gu = g(u);
    if (std::abs(gu) <= 1e-15 * std::max(1.0, std::abs(u))) break;
    if (gu > 0.0) {
      b = u;
    } else {
      a = u;
    }
    const double dg = 1.0 + t * du0(x - u * t);
    double next = u - gu / dg;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - u) <= 1e-16 * std::max(1.0, std::abs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

double burgers_sine_exact(double x, double t) {
  using std::numbers::pi;
  return burgers_exact_smooth(
      [](double y) { return 2.0 + std::sin(pi * (y - 0.7)); },
      [](double y) { return pi * std::cos(pi * (y - 0.7)); }, 1.0 / pi, x, t);
}

}  // namespace relaxfr
