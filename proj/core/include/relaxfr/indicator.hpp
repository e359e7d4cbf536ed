#pragma once

#include <span>
#include <vector>

#include "relaxfr/basis.hpp"
#include "relaxfr/equations.hpp"
#include "relaxfr/field.hpp"

namespace relaxfr {

struct IndicatorConfig {
  double k = 2e5;
  double eps_min = 1e-12;
  double eps_max = 1e-3;
};

void validate(const IndicatorConfig& cfg);

/// Relative energy of the highest Legendre modes of one element's nodal
/// values of q. In 1D
///   E = max(q_{N-1}^2 / sum_{j<=N-1} q_j^2, q_N^2 / sum_{j<=N} q_j^2).
/// In 2D the partial sums run over the tensor squares {i, j <= K}. Elements
/// whose total energy is below 1e-28 return 0.
double modal_energy(std::span<const double> q_nodal, const BasisData& basis,
                    int dim);

/// eps = min(eps_max, max(k E, eps_min)).
double map_eps(double energy, const IndicatorConfig& cfg);

/// Per-element eps from the u block of an augmented (or physical) field.
void compute_eps(const NodalField& w, const EquationSystem& eq,
                 const BasisData& basis, const IndicatorConfig& cfg,
                 std::span<double> eps_out);

}  // namespace relaxfr
