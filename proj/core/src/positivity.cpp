#include "relaxfr/positivity.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "relaxfr/errors.hpp"

namespace relaxfr {

LimitResult limit_element(std::span<double> states, std::size_t stride,
                          std::span<const double> weights,
                          const CompressibleEuler& eq,
                          const PositivityConfig& cfg, int element,
                          const Matrix* extra_points) {
  const int m = eq.n_vars();
  const std::size_t n = weights.size();
  auto node = [&](std::size_t q) {
    return states.subspan(q * stride, static_cast<std::size_t>(m));
  };

  std::array<double, 4> mean{};
  double wsum = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto u = node(q);
    for (int k = 0; k < m; ++k) mean[k] += weights[q] * u[k];
    wsum += weights[q];
  }
  for (int k = 0; k < m; ++k) mean[k] /= wsum;
  const std::span<const double> ubar(mean.data(), m);
  const double rho_bar = mean[0];
  if (!(rho_bar > 0.0) || !(eq.pressure(ubar) > 0.0)) {
    throw AdmissibilityError("positivity: cell mean not admissible in element " +
                                 std::to_string(element),
                             element);
  }
  const double p_bar = eq.pressure(ubar);

  // states checked against the floors: the nodes, then the extra points
  const std::size_t n_extra = extra_points ? extra_points->rows() : 0;
  std::vector<double> pts((n + n_extra) * m);
  auto gather = [&] {
    for (std::size_t q = 0; q < n; ++q) {
      std::copy_n(node(q).begin(), m, pts.begin() + q * m);
    }
    for (std::size_t r = 0; r < n_extra; ++r) {
      double* out = &pts[(n + r) * m];
      std::fill_n(out, m, 0.0);
      for (std::size_t q = 0; q < n; ++q) {
        const double c = (*extra_points)(r, q);
        const auto u = node(q);
        for (int k = 0; k < m; ++k) out[k] += c * u[k];
      }
    }
  };
  auto point = [&](std::size_t i) {
    return std::span<const double>(&pts[i * m], m);
  };
  const std::size_t n_pts = n + n_extra;

  LimitResult result;

  gather();
  // solution points use floor_fraction, extra points trace_floor_fraction
  auto floor_for = [&](std::size_t i, double mean_value) {
    const double frac = i < n ? cfg.floor_fraction : cfg.trace_floor_fraction;
    return std::max(frac * mean_value, cfg.absolute_floor);
  };
  double theta1 = 1.0;
  for (std::size_t i = 0; i < n_pts; ++i) {
    const double r = point(i)[0];
    const double f = floor_for(i, rho_bar);
    if (r < f) theta1 = std::min(theta1, (rho_bar - f) / (rho_bar - r));
  }
  if (theta1 < 1.0) {
    result.theta_density = theta1;
    for (std::size_t q = 0; q < n; ++q) {
      auto u = node(q);
      u[0] = rho_bar + result.theta_density * (u[0] - rho_bar);
    }
    gather();
  }

  // Pressure is concave in the conservative variables, so along the segment
  // from the mean to a point it drops below the floor at most once.
  std::array<double, 4> trial{};
  const std::span<double> ut(trial.data(), m);
  auto pressure_at = [&](std::span<const double> u, double t) {
    for (int k = 0; k < m; ++k) ut[k] = mean[k] + t * (u[k] - mean[k]);
    return eq.pressure(ut);
  };
  double theta = 1.0;
  for (std::size_t i = 0; i < n_pts; ++i) {
    const auto u = point(i);
    const double f = floor_for(i, p_bar);
    if (pressure_at(u, 1.0) >= f) continue;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (pressure_at(u, mid) >= f ? lo : hi) = mid;
    }
    theta = std::min(theta, lo);
  }
  if (theta < 1.0) {
    result.theta_pressure = theta;
    for (std::size_t q = 0; q < n; ++q) {
      auto u = node(q);
      for (int k = 0; k < m; ++k) u[k] = mean[k] + theta * (u[k] - mean[k]);
    }
  }
  return result;
}

}  // namespace relaxfr
