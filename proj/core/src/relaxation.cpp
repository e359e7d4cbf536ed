#include "relaxfr/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "relaxfr/errors.hpp"

namespace relaxfr {

SpeedPolicy parse_speed_policy(std::string_view name) {
  if (name == "fixed") return SpeedPolicy::FixedUser;
  if (name == "auto" || name == "sqrt2_max_eig") {
    return SpeedPolicy::Sqrt2TimesMaxEig;
  }
  throw std::invalid_argument("unknown speed policy: " + std::string(name));
}

void augment_flux(const AugmentedLayout& layout, std::span<const double> w,
                  int direction, std::array<double, 2> a,
                  std::span<double> out) {
  const int m = layout.n_phys;
  const double a2 = a[direction] * a[direction];
  std::fill(out.begin(), out.begin() + layout.n_total(), 0.0);
  const int vd = layout.v_offset(direction);
  for (int k = 0; k < m; ++k) {
    out[k] = w[vd + k];
    out[vd + k] = a2 * w[k];
  }
}

void relaxation_source(const AugmentedLayout& layout,
                       std::span<const double> w, double eps,
                       const EquationSystem& eq, std::span<double> out) {
  if (!(eps > 0.0)) throw std::invalid_argument("relaxation_source: eps <= 0");
  const int m = layout.n_phys;
  std::array<double, 8> f{};
  std::fill(out.begin(), out.begin() + m, 0.0);
  for (int d = 0; d < layout.dim; ++d) {
    eq.flux(w.first(m), d, std::span<double>(f).first(m));
    const int vd = layout.v_offset(d);
    for (int k = 0; k < m; ++k) out[vd + k] = -(w[vd + k] - f[k]) / eps;
  }
}

void implicit_stage_solve(const AugmentedLayout& layout, std::span<double> w,
                          double a_ii, double dt, double eps,
                          const EquationSystem& eq,
                          std::span<double> dt_source) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("implicit_stage_solve: eps must be positive");
  }
  const int m = layout.n_phys;
  const double kappa = dt * a_ii / eps;
  std::array<double, 8> f{};
  if (!dt_source.empty()) std::fill(dt_source.begin(), dt_source.begin() + m, 0.0);
  for (int d = 0; d < layout.dim; ++d) {
    eq.flux_unchecked(w.first(m), d, std::span<double>(f).first(m));
    const int vd = layout.v_offset(d);
    for (int k = 0; k < m; ++k) {
      const double v_expl = w[vd + k];
      if (a_ii > 0.0) {
        // v - f = (v_expl - f) / (1 + kappa); exact when v_expl == f.
        const double gap = (v_expl - f[k]) / (1.0 + kappa);
        w[vd + k] = f[k] + gap;
        if (!dt_source.empty()) dt_source[vd + k] = -(kappa * gap) / a_ii;
      } else if (!dt_source.empty()) {
        dt_source[vd + k] = -dt * (v_expl - f[k]) / eps;
      }
    }
  }
}

std::array<double, 2> select_speeds(const NodalField& w,
                                    const AugmentedLayout& layout,
                                    const EquationSystem& eq,
                                    const RelaxationConfig& cfg) {
  if (cfg.policy == SpeedPolicy::FixedUser) {
    if (!(cfg.a[0] > 0.0) || (layout.dim == 2 && !(cfg.a[1] > 0.0))) {
      throw std::invalid_argument("fixed relaxation speeds must be positive");
    }
    return cfg.a;
  }
  const int m = layout.n_phys;
  std::array<double, 2> eig{0.0, 0.0};
  if (m == 1) {
    // Scalar: the hull of the values bounds every wave speed that can appear.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int e = 0; e < w.n_elements(); ++e) {
      for (int q = 0; q < w.nodes_per_element(); ++q) {
        const double u = w.node(e, q)[0];
        if (!std::isfinite(u)) {
          throw AdmissibilityError("select_speeds: non-finite state", e);
        }
        lo = std::min(lo, u);
        hi = std::max(hi, u);
      }
    }
    const std::array<double, 1> ulo{lo}, uhi{hi};
    for (int d = 0; d < layout.dim; ++d) {
      eig[d] = eq.max_abs_eig_between(ulo, uhi, d);
    }
  } else {
    for (int e = 0; e < w.n_elements(); ++e) {
      for (int q = 0; q < w.nodes_per_element(); ++q) {
        const auto u = w.node(e, q).first(m);
        if (!eq.admissible(u)) {
          throw AdmissibilityError(
              "select_speeds: non-admissible state in element " +
                  std::to_string(e),
              e);
        }
        for (int d = 0; d < layout.dim; ++d) {
          eig[d] = std::max(eig[d], eq.max_abs_eig(u, d));
        }
      }
    }
  }
  const double factor =
      layout.dim == 1 ? cfg.safety_1d : std::numbers::sqrt2;
  std::array<double, 2> a{cfg.a_floor, cfg.a_floor};
  for (int d = 0; d < layout.dim; ++d) {
    a[d] = std::max(factor * eig[d], cfg.a_floor);
  }
  return a;
}

EllipticReport check_elliptic_condition(const NodalField& w,
                                        const AugmentedLayout& layout,
                                        const EquationSystem& eq,
                                        std::array<double, 2> a) {
  EllipticReport report;
  const int m = layout.n_phys;
  for (int e = 0; e < w.n_elements(); ++e) {
    for (int q = 0; q < w.nodes_per_element(); ++q) {
      const auto u = w.node(e, q).first(m);
      ++report.points;
      if (!eq.admissible(u)) {
        ++report.violations;
        continue;
      }
      double lhs = 0.0;
      for (int d = 0; d < layout.dim; ++d) {
        const double lam = eq.max_abs_eig(u, d);
        lhs += lam * lam / (a[d] * a[d]);
      }
      report.max_lhs = std::max(report.max_lhs, lhs);
      if (lhs > 1.0 + 1e-12) ++report.violations;
    }
  }
  return report;
}

NodalField equilibrium_init(const NodalField& u0, const EquationSystem& eq) {
  const AugmentedLayout layout{eq.n_vars(), eq.dim()};
  if (u0.n_vars() != layout.n_phys) {
    throw std::invalid_argument("equilibrium_init: variable count mismatch");
  }
  NodalField w(u0.n_elements(), u0.nodes_per_element(), layout.n_total());
  w.time = u0.time;
  for (int e = 0; e < u0.n_elements(); ++e) {
    for (int q = 0; q < u0.nodes_per_element(); ++q) {
      const auto u = u0.node(e, q);
      auto wn = w.node(e, q);
      std::copy(u.begin(), u.end(), wn.begin());
      for (int d = 0; d < layout.dim; ++d) {
        try {
          eq.flux(u, d, wn.subspan(layout.v_offset(d), layout.n_phys));
        } catch (const AdmissibilityError&) {
          throw AdmissibilityError(
              "equilibrium_init: non-admissible initial state in element " +
                  std::to_string(e),
              e);
        }
      }
    }
  }
  return w;
}

}  // namespace relaxfr
