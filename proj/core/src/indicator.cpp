#include "relaxfr/indicator.hpp"

#include <algorithm>
#include <stdexcept>

namespace relaxfr {

namespace {
constexpr double kEnergyFloor = 1e-28;
}

void validate(const IndicatorConfig& cfg) {
  if (!(cfg.k > 0.0)) throw std::invalid_argument("indicator: k must be > 0");
  if (!(cfg.eps_min > 0.0) || !(cfg.eps_min <= cfg.eps_max)) {
    throw std::invalid_argument("indicator: need 0 < eps_min <= eps_max");
  }
}

double modal_energy(std::span<const double> q_nodal, const BasisData& basis,
                    int dim) {
  const int n = basis.n_nodes();
  const int N = basis.degree;
  if (N < 1) throw std::invalid_argument("modal_energy: degree must be >= 1");
  const Matrix& leg = basis.legendre_at_nodes;
  const auto& w = basis.weights;

  // energy[K] = sum of squared coefficients with all mode indices <= K.
  std::vector<double> energy(n, 0.0);
  if (dim == 1) {
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int q = 0; q < n; ++q) c += q_nodal[q] * leg(j, q) * w[q];
      for (int K = j; K < n; ++K) energy[K] += c * c;
    }
  } else {
    // Project along x first, then along y.
    std::vector<double> half(static_cast<std::size_t>(n) * n, 0.0);
    for (int qy = 0; qy < n; ++qy) {
      for (int i = 0; i < n; ++i) {
        double c = 0.0;
        for (int qx = 0; qx < n; ++qx) {
          c += q_nodal[qx + n * qy] * leg(i, qx) * w[qx];
        }
        half[i + n * qy] = c;
      }
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        double c = 0.0;
        for (int qy = 0; qy < n; ++qy) c += half[i + n * qy] * leg(j, qy) * w[qy];
        for (int K = std::max(i, j); K < n; ++K) energy[K] += c * c;
      }
    }
  }

  double e = 0.0;
  if (energy[N] >= kEnergyFloor) {
    e = (energy[N] - energy[N - 1]) / energy[N];
  }
  if (energy[N - 1] >= kEnergyFloor) {
    const double lower = N >= 2 ? energy[N - 2] : 0.0;
    e = std::max(e, (energy[N - 1] - lower) / energy[N - 1]);
  }
  return std::clamp(e, 0.0, 1.0);
}

double map_eps(double energy, const IndicatorConfig& cfg) {
  return std::min(cfg.eps_max, std::max(cfg.k * energy, cfg.eps_min));
}

void compute_eps(const NodalField& w, const EquationSystem& eq,
                 const BasisData& basis, const IndicatorConfig& cfg,
                 std::span<double> eps_out) {
  const int m = eq.n_vars();
  const int npe = w.nodes_per_element();
  std::vector<double> q(npe);
  for (int e = 0; e < w.n_elements(); ++e) {
    for (int p = 0; p < npe; ++p) {
      q[p] = eq.indicator_quantity(w.node(e, p).first(m));
    }
    eps_out[e] = map_eps(modal_energy(q, basis, eq.dim()), cfg);
  }
}

}  // namespace relaxfr
