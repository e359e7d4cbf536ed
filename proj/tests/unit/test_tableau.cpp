#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "relaxfr/tableau.hpp"

using namespace relaxfr;

namespace {

// y' = l_exp y + l_imp y, explicit part with the explicit tableau and the
// stiff part with the DIRK tableau.
double imex_integrate(const DoubleButcherTableau& t, double l_exp, double l_imp,
                      double t_final, int steps) {
  const double h = t_final / steps;
  double y = 1.0;
  std::vector<double> stage(t.stages);
  for (int n = 0; n < steps; ++n) {
    for (int i = 0; i < t.stages; ++i) {
      double rhs = y;
      for (int j = 0; j < i; ++j) {
        rhs += h * (t.a_exp(i, j) * l_exp + t.a_imp(i, j) * l_imp) * stage[j];
      }
      stage[i] = rhs / (1.0 - h * t.a_imp(i, i) * l_imp);
    }
    double next = y;
    for (int i = 0; i < t.stages; ++i) {
      next += h * (t.b_exp[i] * l_exp + t.b_imp[i] * l_imp) * stage[i];
    }
    y = next;
  }
  return y;
}

double eoc(const DoubleButcherTableau& t, double l_exp, double l_imp) {
  const double exact = std::exp(l_exp + l_imp);
  const double e1 = std::abs(imex_integrate(t, l_exp, l_imp, 1.0, 40) - exact);
  const double e2 = std::abs(imex_integrate(t, l_exp, l_imp, 1.0, 80) - exact);
  return std::log2(e1 / e2);
}

}  // namespace

TEST_SUITE("tableau") {

TEST_CASE("registry") {
  CHECK(get_tableau("SSP3-IMEX(4,3,3)").stages == 4);
  CHECK(get_tableau("ssp3").name == "SSP3-IMEX(4,3,3)");
  CHECK(get_tableau("BPR(3,4,3)").stages == 5);
  CHECK(get_tableau("bpr343").order == 3);
  CHECK(get_tableau("ARS-111").stages == 2);
  CHECK_THROWS_AS(get_tableau("RK4"), std::invalid_argument);
  CHECK(tableau_names().size() == 3);
}

TEST_CASE("forward-backward Euler pair") {
  const auto& t = get_tableau("ARS-111");
  CHECK(t.a_exp(1, 0) == 1.0);
  CHECK(t.a_imp(1, 1) == 1.0);
  CHECK(t.b_exp == std::vector<double>{0.0, 1.0});
  CHECK(t.b_imp == std::vector<double>{0.0, 1.0});
  CHECK(verify_order(t, 1).passed);
  const auto second = verify_order(t, 2);
  CHECK_FALSE(second.passed);
  CHECK(second.structural_ok);
  CHECK_FALSE(second.violations.empty());
}

TEST_CASE("third-order tableaux pass every condition") {
  for (const char* name : {"SSP3-IMEX(4,3,3)", "BPR(3,4,3)"}) {
    CAPTURE(name);
    const auto& t = get_tableau(name);
    const auto report = verify_order(t, 3);
    CHECK(report.structural_ok);
    CHECK(report.passed);
    CHECK(report.max_residual < 1e-12);
    CHECK(report.violations.empty());
    // Stiffly accurate implicit part.
    if (t.name == "BPR(3,4,3)") {
      for (int j = 0; j < t.stages; ++j) {
        CHECK(std::abs(t.a_imp(t.stages - 1, j) - t.b_imp[j]) < 1e-15);
      }
    }
  }
}

TEST_CASE("corrupted tableau is caught") {
  DoubleButcherTableau t = get_tableau("SSP3-IMEX(4,3,3)");
  t.b_exp[1] += 1e-6;
  CHECK_FALSE(verify_order(t, 3).passed);
  DoubleButcherTableau u = get_tableau("BPR(3,4,3)");
  u.a_exp(1, 1) = 0.1;
  CHECK_FALSE(verify_order(u, 1).structural_ok);
}

TEST_CASE("scalar ODE convergence order") {
  for (const char* name : {"SSP3-IMEX(4,3,3)", "BPR(3,4,3)", "ARS-111"}) {
    CAPTURE(name);
    const auto& t = get_tableau(name);
    CHECK(eoc(t, -1.3, 0.0) >= t.order - 0.2);
    CHECK(eoc(t, 0.0, -1.3) >= t.order - 0.2);
    CHECK(eoc(t, 0.7, -1.9) >= t.order - 0.2);
  }
}

}  // TEST_SUITE
