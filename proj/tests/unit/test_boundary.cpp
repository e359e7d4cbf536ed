#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "relaxfr/boundary.hpp"

using namespace relaxfr;
using namespace relaxfr::testing;
using std::numbers::pi;

namespace {
constexpr auto kP = BoundaryKind::Periodic;
constexpr auto kW = BoundaryKind::ReflectingWall;
}  // namespace

TEST_SUITE("boundary") {

TEST_CASE("wall ghost negates the normal velocity") {
  const CompressibleEuler eq(1);
  const AugmentedLayout layout{3, 1};
  const std::vector<double> interior{1.0, 0.5, 2.5, 0.3, 1.7, 0.9};
  std::vector<double> ghost(6);
  ghost_state(eq, layout, Side::Right, kW, interior, ghost);
  CHECK(ghost == std::vector<double>{1.0, -0.5, 2.5, -0.3, 1.7, -0.9});
  ghost_state(eq, layout, Side::Left, kW, interior, ghost);
  CHECK(ghost == std::vector<double>{1.0, -0.5, 2.5, -0.3, 1.7, -0.9});
}

TEST_CASE("wall ghost in 2D") {
  const CompressibleEuler eq(2);
  const AugmentedLayout layout{4, 2};
  std::vector<double> interior(12);
  for (int i = 0; i < 12; ++i) interior[i] = 1.0 + i;
  std::vector<double> ghost(12);
  wall_ghost(eq, layout, 1, interior, ghost);
  const std::vector<double> r{1, 1, -1, 1};
  for (int k = 0; k < 4; ++k) {
    CHECK(ghost[k] == r[k] * interior[k]);
    CHECK(ghost[4 + k] == r[k] * interior[4 + k]);    // tangential v_1
    CHECK(ghost[8 + k] == -r[k] * interior[8 + k]);   // normal v_2
  }
}

TEST_CASE("gas at rest produces no wall mass flux") {
  const CompressibleEuler eq(1);
  const AugmentedLayout layout{3, 1};
  const double p = 0.8;
  const std::vector<double> interior{1.2, 0.0, p / 0.4, 0.0, p, 0.0};
  std::vector<double> ghost(6);
  ghost_state(eq, layout, Side::Right, kW, interior, ghost);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ghost[i]) == std::abs(interior[i]));
  std::vector<double> fi(6), fg(6), num(6);
  const std::array<double, 2> a{1.5, 1.0};
  augment_flux(layout, interior, 0, a, fi);
  augment_flux(layout, ghost, 0, a, fg);
  time_avg_numflux(fi, fg, interior, ghost, a[0], num);
  CHECK(num[0] == 0.0);
  CHECK(std::abs(num[1] - p) < 1e-15);
  CHECK(num[2] == 0.0);
}

TEST_CASE("unsupported ghosts") {
  const Burgers burgers;
  std::vector<double> g(2);
  CHECK_THROWS_AS(wall_ghost(burgers, {1, 1}, 0, std::vector<double>{1.0, 0.5}, g),
                  std::invalid_argument);
  const CompressibleEuler eq(1);
  std::vector<double> g3(6);
  CHECK_THROWS_AS(ghost_state(eq, {3, 1}, Side::Left, kP, std::vector<double>(6, 1.0), g3),
                  std::invalid_argument);
}

TEST_CASE("walls match the mirrored periodic problem") {
  // Data even in rho, p and odd in velocity about x = 0 and x = 1.
  auto eq = std::make_shared<CompressibleEuler>(1);
  auto init = [&](double x, double, std::span<double> u) {
    eq->to_conservative(std::vector<double>{1.0 + 0.2 * std::cos(pi * x),
                                            0.1 * std::sin(pi * x),
                                            1.0 + 0.1 * std::cos(2.0 * pi * x)},
                        u);
  };
  CrkfrScheme walls = make_scheme(eq, Mesh::line(0.0, 1.0, 10, kW, kW));
  CrkfrScheme torus = make_scheme(eq, Mesh::line(-1.0, 1.0, 20, kP, kP));
  NodalField ww = equilibrium_field(walls, init);
  NodalField wt = equilibrium_field(torus, init);
  const auto mass0 = walls.integrate(ww)[0];
  std::vector<double> eps_w(10, 1e-4), eps_t(20, 1e-4);
  const std::array<double, 2> a{2.0, 1.0};
  const double dt = compute_dt(walls.mesh(), 3, a, 0.3);
  double mass_drift = 0.0;
  for (int n = 0; n < 100; ++n) {
    walls.step(ww, dt, a, eps_w);
    torus.step(wt, dt, a, eps_t);
    mass_drift = std::max(mass_drift, std::abs(walls.integrate(ww)[0] - mass0));
  }
  CHECK(mass_drift < 1e-10 * mass0);
  double diff = 0.0;
  for (int e = 0; e < 10; ++e) {
    for (int q = 0; q < 4; ++q) {
      for (int k = 0; k < 6; ++k) {
        diff = std::max(diff, std::abs(ww.node(e, q)[k] - wt.node(e + 10, q)[k]));
      }
    }
  }
  CHECK(diff < 1e-11);
}

}  // TEST_SUITE
