#pragma once

#include <span>

#include "relaxfr/equations.hpp"
#include "relaxfr/mesh.hpp"
#include "relaxfr/relaxation.hpp"

namespace relaxfr {

/// Ghost trace of the time-averaged solution U behind a reflecting wall.
///
/// With R the reflection parity of the physical state across a wall normal
/// to `normal_direction`:
///   u_ghost = R u,  v_normal_ghost = -R v_normal,  v_tangent_ghost = R v_t.
/// These are the parities of the Euler fluxes under velocity reflection, so
/// ghost = interior for a state at rest and the mass flux through the wall
/// vanishes. The ghost flux trace follows as the relaxation flux of the
/// ghost state. Throws std::invalid_argument when `eq` has no reflection
/// parity (scalar laws) or for a periodic kind.
void wall_ghost(const EquationSystem& eq, const AugmentedLayout& layout,
                int normal_direction, std::span<const double> interior,
                std::span<double> ghost);

/// Dispatches on the boundary kind: periodic sides never need a ghost (the
/// mesh wraps them), so only ReflectingWall is accepted here.
void ghost_state(const EquationSystem& eq, const AugmentedLayout& layout,
                 Side side, BoundaryKind kind, std::span<const double> interior,
                 std::span<double> ghost);

}  // namespace relaxfr
