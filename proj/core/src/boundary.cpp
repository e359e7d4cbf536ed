#include "relaxfr/boundary.hpp"

#include <stdexcept>
#include <string>

namespace relaxfr {

void wall_ghost(const EquationSystem& eq, const AugmentedLayout& layout,
                int normal_direction, std::span<const double> interior,
                std::span<double> ghost) {
  const auto parity = eq.reflection_parity(normal_direction);
  if (!parity) {
    throw std::invalid_argument("reflecting walls are not supported for " +
                                std::string(eq.name()));
  }
  const int m = layout.n_phys;
  for (int k = 0; k < m; ++k) ghost[k] = (*parity)[k] * interior[k];
  for (int d = 0; d < layout.dim; ++d) {
    const int off = layout.v_offset(d);
    const double sign = d == normal_direction ? -1.0 : 1.0;
    for (int k = 0; k < m; ++k) {
      ghost[off + k] = sign * (*parity)[k] * interior[off + k];
    }
  }
}

void ghost_state(const EquationSystem& eq, const AugmentedLayout& layout,
                 Side side, BoundaryKind kind, std::span<const double> interior,
                 std::span<double> ghost) {
  if (kind != BoundaryKind::ReflectingWall) {
    throw std::invalid_argument(
        "ghost_state: periodic faces take the wrapped neighbor trace");
  }
  const int normal = (side == Side::Left || side == Side::Right) ? 0 : 1;
  wall_ghost(eq, layout, normal, interior, ghost);
}

}  // namespace relaxfr
