#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "relaxfr/errors.hpp"
#include "relaxfr/relaxation.hpp"

using namespace relaxfr;

namespace {

NodalField scalar_field(std::initializer_list<double> values) {
  NodalField u(1, static_cast<int>(values.size()), 1);
  std::copy(values.begin(), values.end(), u.values().begin());
  return u;
}

}  // namespace

TEST_SUITE("relaxation") {

TEST_CASE("linear relaxation flux") {
  const AugmentedLayout l1{1, 1};
  std::vector<double> out(2);
  augment_flux(l1, std::vector<double>{2.0, 3.0}, 0, {5.0, 1.0}, out);
  CHECK(out == std::vector<double>{3.0, 50.0});
  augment_flux(l1, std::vector<double>{0.0, 0.0}, 0, {5.0, 1.0}, out);
  CHECK(out == std::vector<double>{0.0, 0.0});

  const AugmentedLayout l2{1, 2};
  std::vector<double> out2(3);
  augment_flux(l2, std::vector<double>{1.0, 2.0, 3.0}, 1, {1.0, 4.0}, out2);
  CHECK(out2 == std::vector<double>{3.0, 0.0, 16.0});
  augment_flux(l2, std::vector<double>{1.0, 2.0, 3.0}, 0, {2.0, 4.0}, out2);
  CHECK(out2 == std::vector<double>{2.0, 4.0, 0.0});
}

TEST_CASE("relaxation flux is linear") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const AugmentedLayout layout{4, 2};
  const std::array<double, 2> a{1.7, 0.6};
  for (int t = 0; t < 50; ++t) {
    std::vector<double> w1(12), w2(12), mix(12), f1(12), f2(12), fm(12);
    for (auto& x : w1) x = dist(rng);
    for (auto& x : w2) x = dist(rng);
    const double alpha = dist(rng), beta = dist(rng);
    for (int i = 0; i < 12; ++i) mix[i] = alpha * w1[i] + beta * w2[i];
    for (int d = 0; d < 2; ++d) {
      augment_flux(layout, w1, d, a, f1);
      augment_flux(layout, w2, d, a, f2);
      augment_flux(layout, mix, d, a, fm);
      for (int i = 0; i < 12; ++i) {
        CHECK(std::abs(fm[i] - (alpha * f1[i] + beta * f2[i])) < 1e-14);
      }
    }
  }
}

TEST_CASE("stiff source") {
  const Burgers burgers;
  const AugmentedLayout layout{1, 1};
  std::vector<double> s(2), s2(2);
  relaxation_source(layout, std::vector<double>{2.0, 5.0}, 0.5, burgers, s);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == -(5.0 - 2.0) / 0.5);

  relaxation_source(layout, std::vector<double>{2.0, 5.0}, 1.0, burgers, s2);
  CHECK(s2[1] == 0.5 * s[1]);

  relaxation_source(layout, std::vector<double>{2.0, 2.0}, 1e-12, burgers, s);
  CHECK(s[1] == 0.0);
  CHECK_THROWS_AS(relaxation_source(layout, std::vector<double>{2.0, 5.0}, 0.0,
                                    burgers, s),
                  std::invalid_argument);

  const CompressibleEuler euler(1);
  std::vector<double> se(6);
  CHECK_THROWS_AS(relaxation_source({3, 1}, std::vector<double>{-1, 0, 1, 0, 0, 0},
                                    1.0, euler, se),
                  AdmissibilityError);
}

TEST_CASE("implicit stage solve") {
  const Burgers burgers;
  const AugmentedLayout layout{1, 1};

  std::vector<double> w{2.0, 4.0};
  implicit_stage_solve(layout, w, 0.0, 1.0, 1e-3, burgers);
  CHECK(w[1] == 4.0);

  // dt a_ii / eps = 1 and f(u) = 2.
  w = {2.0, 4.0};
  implicit_stage_solve(layout, w, 0.5, 2.0, 1.0, burgers);
  CHECK(std::abs(w[1] - 3.0) < 1e-15);

  w = {2.0, 4.0};
  implicit_stage_solve(layout, w, 1.0, 1.0, 1e-16, burgers);
  CHECK(std::abs(w[1] - 2.0) < 1e-12 * 2.0);

  CHECK_THROWS_AS(implicit_stage_solve(layout, w, 0.5, 1.0, 0.0, burgers),
                  std::invalid_argument);
}

TEST_CASE("implicit stage residual") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> pos(0.3, 3.0), vel(-1.0, 1.0),
      noise(-5.0, 5.0), logeps(-12.0, 0.0), coef(0.0, 1.0);
  const CompressibleEuler eq(2);
  const AugmentedLayout layout{4, 2};
  for (int t = 0; t < 200; ++t) {
    std::vector<double> prim{pos(rng), vel(rng), vel(rng), pos(rng)};
    std::vector<double> w(12);
    eq.to_conservative(prim, std::span<double>(w).first(4));
    for (int i = 4; i < 12; ++i) w[i] = noise(rng);
    const std::vector<double> expl = w;
    const double eps = std::pow(10.0, logeps(rng));
    const double a_ii = coef(rng), dt = 0.01 * coef(rng) + 1e-4;
    std::vector<double> dts(12);
    implicit_stage_solve(layout, w, a_ii, dt, eps, eq, dts);
    const double kappa = dt * a_ii / eps;
    for (int d = 0; d < 2; ++d) {
      const auto f = eq.flux(std::span<const double>(w).first(4), d);
      for (int i = 0; i < 4; ++i) {
        const int k = layout.v_offset(d) + i;
        const double v = w[k];
        const double residual = v - expl[k] + kappa * (v - f[i]);
        const double scale = std::abs(v) + std::abs(expl[k]) +
                             kappa * (std::abs(v) + std::abs(f[i]));
        CAPTURE(kappa);
        CHECK(std::abs(residual) < 1e-12 * scale);
        // dt s(w) = -dt (v - f) / eps; both routes lose digits to the
        // differences they take.
        const double dts_expected = -dt * (v - f[i]) / eps;
        const double roundoff = (std::abs(v) + std::abs(expl[k])) / a_ii +
                                dt * (std::abs(v) + std::abs(f[i])) / eps;
        CHECK(std::abs(dts[k] - dts_expected) <=
              1e-12 * std::abs(dts_expected) + 1e-14 * roundoff);
      }
    }
    for (int i = 0; i < 4; ++i) CHECK(dts[i] == 0.0);
  }
}

TEST_CASE("relaxation speed selection") {
  RelaxationConfig cfg;
  SUBCASE("1D Burgers uses the safety factor") {
    const Burgers burgers;
    const NodalField w = equilibrium_init(scalar_field({1.0, 2.5, 3.0, 1.2}), burgers);
    const auto a = select_speeds(w, {1, 1}, burgers, cfg);
    CHECK(std::abs(a[0] - 1.1 * 3.0) < 1e-15);
  }
  SUBCASE("hull of the values for a non-convex flux") {
    const BuckleyLeverett bl;
    const NodalField w = equilibrium_init(scalar_field({0.0, 0.0, 1.0, 1.0}), bl);
    const auto a = select_speeds(w, {1, 1}, bl, cfg);
    CHECK(a[0] > 1.1 * 2.0);
  }
  SUBCASE("2D uses sqrt(2) per direction") {
    const LinearAdvection lin(2, {2.0, -1.0});
    const NodalField w = equilibrium_init(scalar_field({0.0, 0.0, 0.0, 0.0}), lin);
    const auto a = select_speeds(w, {1, 2}, lin, cfg);
    CHECK(std::abs(a[0] - 2.0 * std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(a[1] - std::numbers::sqrt2) < 1e-15);
  }
  SUBCASE("fixed speeds") {
    cfg.policy = SpeedPolicy::FixedUser;
    cfg.a = {2.0, 3.0};
    const Burgers burgers;
    const NodalField w = equilibrium_init(scalar_field({5.0}), burgers);
    CHECK(select_speeds(w, {1, 1}, burgers, cfg) == std::array<double, 2>{2.0, 3.0});
  }
}

TEST_CASE("elliptic condition diagnostic") {
  SUBCASE("sqrt(2) speeds satisfy it") {
    const Burgers burgers(2);
    const NodalField w = equilibrium_init(scalar_field({-1.0, 0.5, 2.0}), burgers);
    const auto a = select_speeds(w, {1, 2}, burgers, RelaxationConfig{});
    const auto report = check_elliptic_condition(w, {1, 2}, burgers, a);
    CHECK(report.max_lhs <= 1.0 + 1e-14);
    CHECK(report.violations == 0);
    CHECK(report.points == 3);
  }
  SUBCASE("speeds without the factor are flagged") {
    const Burgers burgers(2);
    const NodalField w = equilibrium_init(scalar_field({2.0, 1.0}), burgers);
    const auto report = check_elliptic_condition(w, {1, 2}, burgers, {2.0, 2.0});
    CHECK(std::abs(report.max_lhs - 2.0) < 1e-14);
    CHECK(report.violations == 1);
  }
  SUBCASE("boundary case") {
    const LinearAdvection lin(2, {1.0, 1.0});
    const NodalField w = equilibrium_init(scalar_field({0.3}), lin);
    const auto report = check_elliptic_condition(
        w, {1, 2}, lin, {std::numbers::sqrt2, std::numbers::sqrt2});
    CHECK(std::abs(report.max_lhs - 1.0) < 1e-14);
    CHECK(report.violations == 0);
  }
}

TEST_CASE("equilibrium initialization") {
  const Burgers burgers;
  const NodalField w = equilibrium_init(scalar_field({2.0}), burgers);
  CHECK(w.node(0, 0)[1] == 2.0);

  const CompressibleEuler euler(1);
  NodalField u(1, 1, 3);
  u.values() = {1.0, 0.0, 2.5};
  const NodalField we = equilibrium_init(u, euler);
  CHECK(std::abs(we.node(0, 0)[3]) < 1e-15);
  CHECK(std::abs(we.node(0, 0)[4] - 1.0) < 1e-15);
  CHECK(std::abs(we.node(0, 0)[5]) < 1e-15);

  std::vector<double> s(6);
  relaxation_source({3, 1}, we.node(0, 0), 1e-12, euler, s);
  for (double x : s) CHECK(x == 0.0);

  u.values() = {1.0, 0.0, -2.5};
  CHECK_THROWS_AS(equilibrium_init(u, euler), AdmissibilityError);
}

}  // TEST_SUITE
