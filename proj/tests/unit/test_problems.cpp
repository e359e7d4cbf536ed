#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"

using namespace relaxfr;
using namespace relaxfr::testing;

TEST_SUITE("problems") {

TEST_CASE("registry entries") {
  CHECK(problem_names().size() == 7);
  CHECK_THROWS_AS(get_problem("sod"), std::invalid_argument);

  const auto& burgers = get_problem("burgers_sine");
  CHECK(burgers.equation == "burgers");
  CHECK(burgers.nx == 20);
  CHECK(burgers.degree == 3);
  CHECK(burgers.t_final == 0.5);
  CHECK(burgers.eps_max == 2e-3);
  CHECK(burgers.tableau == "SSP3-IMEX(4,3,3)");

  const auto& bl = get_problem("buckley_leverett");
  CHECK(bl.nx == 50);
  CHECK(bl.t_final == 0.15);
  CHECK(bl.eps_max == 2e-4);

  const auto& wc = get_problem("wc_blast");
  CHECK(wc.nx == 400);
  CHECK(wc.eps_max == 1e-7);
  CHECK(wc.t_final == 0.038);
  CHECK(wc.positivity);
  CHECK(wc.bc[0] == BoundaryKind::ReflectingWall);
  CHECK(wc.bc[1] == BoundaryKind::ReflectingWall);

  const auto& sedov = get_problem("sedov_blast_2d");
  CHECK(sedov.dim == 2);
  CHECK(sedov.nx == 64);
  CHECK(sedov.ny == 64);
  CHECK(sedov.eps_max == 8e-5);
  CHECK(sedov.tableau == "BPR(3,4,3)");
  CHECK(sedov.positivity);

  const auto& khi = get_problem("khi_2d");
  CHECK(khi.nx == 32);
  CHECK(khi.t_final == 10.0);
  CHECK(khi.eps_max == 1e-6);
  CHECK(khi.tableau == "BPR(3,4,3)");
}

TEST_CASE("initial data samples") {
  std::vector<double> prim(4);
  get_problem("burgers_sine").initial(0.7, 0.0, prim);
  CHECK(std::abs(prim[0] - 2.0) < 1e-15);
  get_problem("buckley_leverett").initial(-0.25, 0.0, prim);
  CHECK(prim[0] == 1.0);
  get_problem("buckley_leverett").initial(0.25, 0.0, prim);
  CHECK(prim[0] == 0.0);
  get_problem("wc_blast").initial(0.05, 0.0, prim);
  CHECK(prim[2] == 1000.0);
  get_problem("wc_blast").initial(0.5, 0.0, prim);
  CHECK(prim[2] == 0.01);
  get_problem("wc_blast").initial(0.95, 0.0, prim);
  CHECK(prim[2] == 100.0);
  get_problem("khi_2d").initial(0.25, 0.0, prim);
  const double b = std::tanh(7.5) - std::tanh(-7.5);
  CHECK(std::abs(prim[0] - (0.5 + 0.75 * b)) < 1e-15);
  CHECK(std::abs(prim[1] - 0.5 * (b - 1.0)) < 1e-15);
  CHECK(std::abs(prim[2] - 0.1) < 1e-15);
  CHECK(prim[3] == 1.0);
}

TEST_CASE("every problem starts admissible") {
  for (const auto& name : problem_names()) {
    CAPTURE(name);
    ProblemSpec spec = get_problem(name);
    // Coarser copies keep the test fast; admissibility is pointwise.
    spec.nx = std::min(spec.nx, 40);
    spec.ny = spec.dim == 2 ? std::min(spec.ny, 16) : 1;
    CrkfrScheme s(make_equation(spec), make_mesh(spec),
                  build_basis(spec.degree, spec.node_kind), get_tableau(spec.tableau));
    const NodalField u = sample_initial(s, spec);
    bool ok = true;
    for (int e = 0; e < u.n_elements(); ++e) {
      for (int q = 0; q < u.nodes_per_element(); ++q) {
        const auto n = u.node(e, q);
        ok = ok && s.equation().admissible(n);
        for (double x : n) ok = ok && std::isfinite(x);
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("Sedov excess mass and energy") {
  // Each Gaussian integrates to 1/2 over the plane; the box edge is more
  // than six widths out.
  const auto& spec = get_problem("sedov_blast_2d");
  CrkfrScheme s(make_equation(spec), make_mesh(spec),
                build_basis(spec.degree, spec.node_kind), get_tableau(spec.tableau));
  const NodalField u = sample_initial(s, spec);
  const auto totals = s.integrate(u);
  const double area = 9.0;
  CHECK(std::isfinite(totals[3]));
  CHECK(totals[0] - area * 1.0 == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(totals[3] - area * 1e-5 / 0.4 == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(totals[1]) < 1e-14);
  CHECK(std::abs(totals[2]) < 1e-14);
}

}  // TEST_SUITE
