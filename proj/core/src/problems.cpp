#include "relaxfr/problems.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace relaxfr {

namespace {

using std::numbers::pi;

ProblemSpec burgers_sine() {
  ProblemSpec p;
  p.name = "burgers_sine";
  p.description = "Burgers, u0 = 2 + sin(pi (x - 0.7)) on [-1, 1], shock forms at t = 1/pi";
  p.equation = "burgers";
  p.domain = {-1.0, 1.0, 0.0, 1.0};
  p.nx = 20;
  p.t_final = 0.5;
  p.eps_max = 2e-3;
  p.initial = [](double x, double, std::span<double> u) {
    u[0] = 2.0 + std::sin(pi * (x - 0.7));
  };
  return p;
}

ProblemSpec buckley_leverett() {
  ProblemSpec p;
  p.name = "buckley_leverett";
  p.description = "Buckley-Leverett, u0 = indicator of [-1/2, 0] on [-1, 1]";
  p.equation = "buckley_leverett";
  p.domain = {-1.0, 1.0, 0.0, 1.0};
  p.nx = 50;
  p.t_final = 0.15;
  p.eps_max = 2e-4;
  p.initial = [](double x, double, std::span<double> u) {
    u[0] = (x >= -0.5 && x <= 0.0) ? 1.0 : 0.0;
  };
  return p;
}

ProblemSpec wc_blast() {
  ProblemSpec p;
  p.name = "wc_blast";
  p.description = "Woodward-Colella interacting blast waves, reflecting walls";
  p.equation = "euler";
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.nx = 400;
  p.bc = {BoundaryKind::ReflectingWall, BoundaryKind::ReflectingWall,
          BoundaryKind::Periodic, BoundaryKind::Periodic};
  p.t_final = 0.038;
  p.eps_max = 1e-7;
  p.positivity = true;
  p.positivity_per_stage = true;
  p.initial = [](double x, double, std::span<double> prim) {
    prim[0] = 1.0;
    prim[1] = 0.0;
    prim[2] = x < 0.1 ? 1000.0 : (x < 0.9 ? 0.01 : 100.0);
  };
  return p;
}

ProblemSpec sedov_blast_2d() {
  ProblemSpec p;
  p.name = "sedov_blast_2d";
  p.description = "Sedov blast with Gaussian density and pressure, periodic";
  p.equation = "euler";
  p.dim = 2;
  p.domain = {-1.5, 1.5, -1.5, 1.5};
  p.nx = 64;
  p.ny = 64;
  p.t_final = 1.0;
  p.eps_max = 8e-5;
  p.tableau = "BPR(3,4,3)";
  p.positivity = true;
  const double gamma = p.gamma;
  p.initial = [gamma](double x, double y, std::span<double> prim) {
    constexpr double sigma_rho = 0.25;
    constexpr double sigma_p = 0.15;
    constexpr double rho0 = 1.0;
    constexpr double p0 = 1e-5;
    const double r2 = x * x + y * y;
    prim[0] = rho0 + std::exp(-r2 / (2.0 * sigma_rho * sigma_rho)) /
                         (4.0 * pi * sigma_rho * sigma_rho);
    prim[1] = 0.0;
    prim[2] = 0.0;
    prim[3] = p0 + (gamma - 1.0) * std::exp(-r2 / (2.0 * sigma_p * sigma_p)) /
                       (4.0 * pi * sigma_p * sigma_p);
  };
  return p;
}

ProblemSpec khi_2d() {
  ProblemSpec p;
  p.name = "khi_2d";
  p.description = "Kelvin-Helmholtz instability on [-1, 1]^2, periodic";
  p.equation = "euler";
  p.dim = 2;
  p.domain = {-1.0, 1.0, -1.0, 1.0};
  p.nx = 32;
  p.ny = 32;
  p.t_final = 10.0;
  p.eps_max = 1e-6;
  p.tableau = "BPR(3,4,3)";
  p.positivity = true;
  p.initial = [](double x, double y, std::span<double> prim) {
    const double b = std::tanh(15.0 * y + 7.5) - std::tanh(15.0 * y - 7.5);
    prim[0] = 0.5 + 0.75 * b;
    prim[1] = 0.5 * (b - 1.0);
    prim[2] = 0.1 * std::sin(2.0 * pi * x);
    prim[3] = 1.0;
  };
  return p;
}

ProblemSpec lin_advection_1d() {
  ProblemSpec p;
  p.name = "lin_advection_1d";
  p.description = "Linear advection, c = 1, u0 = sin(2 pi x) on [0, 1]";
  p.equation = "linear_advection";
  p.velocity = {1.0, 0.0};
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.nx = 20;
  p.t_final = 1.0;
  p.eps_max = 1e-12;
  p.eps_fixed = 1e-12;
  p.initial = [](double x, double, std::span<double> u) {
    u[0] = std::sin(2.0 * pi * x);
  };
  p.exact = [](double x, double, double t) {
    return std::sin(2.0 * pi * (x - t));
  };
  return p;
}

ProblemSpec lin_advection_2d() {
  ProblemSpec p;
  p.name = "lin_advection_2d";
  p.description = "Linear advection, c = (1, 1), u0 = sin(2 pi (x + y)) on [0, 1]^2";
  p.equation = "linear_advection";
  p.dim = 2;
  p.velocity = {1.0, 1.0};
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.nx = 16;
  p.ny = 16;
  p.t_final = 1.0;
  p.eps_max = 1e-12;
  p.eps_fixed = 1e-12;
  p.initial = [](double x, double y, std::span<double> u) {
    u[0] = std::sin(2.0 * pi * (x + y));
  };
  p.exact = [](double x, double y, double t) {
    return std::sin(2.0 * pi * (x + y - 2.0 * t));
  };
  return p;
}

const std::map<std::string, ProblemSpec, std::less<>>& registry() {
  static const auto reg = [] {
    std::map<std::string, ProblemSpec, std::less<>> m;
    for (auto p : {burgers_sine(), buckley_leverett(), wc_blast(),
                   sedov_blast_2d(), khi_2d(), lin_advection_1d(),
                   lin_advection_2d()}) {
      m.emplace(p.name, std::move(p));
    }
    return m;
  }();
  return reg;
}

}  // namespace

const ProblemSpec& get_problem(std::string_view name) {
  const auto& reg = registry();
  if (auto it = reg.find(name); it != reg.end()) return it->second;
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& [name, spec] : registry()) names.push_back(name);
  return names;
}

std::shared_ptr<const EquationSystem> make_equation(const ProblemSpec& spec) {
  return make_equation(spec.equation, spec.dim, spec.gamma, spec.velocity);
}

Mesh make_mesh(const ProblemSpec& spec) {
  if (spec.dim == 1) {
    return Mesh::line(spec.domain[0], spec.domain[1], spec.nx, spec.bc[0],
                      spec.bc[1]);
  }
  return Mesh::rectangle(spec.domain[0], spec.domain[1], spec.domain[2],
                         spec.domain[3], spec.nx, spec.ny, spec.bc);
}

NodalField sample_initial(const CrkfrScheme& scheme, const ProblemSpec& spec) {
  const EquationSystem& eq = scheme.equation();
  NodalField u = scheme.make_physical_field();
  std::vector<double> prim(eq.n_vars());
  for (int e = 0; e < u.n_elements(); ++e) {
    for (int q = 0; q < u.nodes_per_element(); ++q) {
      const auto [x, y] = scheme.node_coords(e, q);
      spec.initial(x, y, prim);
      eq.to_conservative(prim, u.node(e, q));
    }
  }
  return u;
}

}  // namespace relaxfr
