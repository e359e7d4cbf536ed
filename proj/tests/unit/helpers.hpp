#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "relaxfr/crkfr.hpp"
#include "relaxfr/equations.hpp"
#include "relaxfr/problems.hpp"
#include "relaxfr/relaxation.hpp"
#include "relaxfr/tableau.hpp"

namespace relaxfr::testing {

inline CrkfrScheme make_scheme(std::shared_ptr<const EquationSystem> eq,
                               Mesh mesh, int degree = 3,
                               std::string_view tableau = "SSP3-IMEX(4,3,3)",
                               NodeKind kind = NodeKind::GaussLegendre) {
  return CrkfrScheme(std::move(eq), std::move(mesh), build_basis(degree, kind),
                     get_tableau(tableau));
}

/// Equilibrium augmented field from a pointwise conservative initializer.
template <class Fn>
NodalField equilibrium_field(const CrkfrScheme& scheme, Fn&& u0) {
  NodalField u = scheme.make_physical_field();
  for (int e = 0; e < u.n_elements(); ++e) {
    for (int q = 0; q < u.nodes_per_element(); ++q) {
      auto [x, y] = scheme.node_coords(e, q);
      u0(x, y, u.node(e, q));
    }
  }
  return equilibrium_init(u, scheme.equation());
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace relaxfr::testing
