#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "relaxfr/runner.hpp"
#include "relaxfr/tableau.hpp"

using namespace relaxfr;

namespace {

int cmd_run(const RunConfig& cli, std::optional<double> cli_cfl,
            const std::string& config_file) {
  RunConfig cfg;
  if (!config_file.empty()) load_config_file(cfg, config_file);
  // command-line flags win over the file
  if (!cli.problem.empty()) cfg.problem = cli.problem;
  if (cli.nx) cfg.nx = cli.nx;
  if (cli.ny) cfg.ny = cli.ny;
  if (cli.degree) cfg.degree = cli.degree;
  if (cli.eps_max) cfg.eps_max = cli.eps_max;
  if (cli.tableau) cfg.tableau = cli.tableau;
  if (cli.t_final) cfg.t_final = cli.t_final;
  if (cli_cfl) cfg.cfl = *cli_cfl;
  if (!cli.output_dir.empty()) cfg.output_dir = cli.output_dir;
  if (!cli.format.empty()) cfg.format = cli.format;
  if (cli.output_every > 0) cfg.output_every = cli.output_every;
  if (cfg.problem.empty()) throw CLI::ValidationError("--problem", "required");

  Simulation sim(cfg);
  const RunReport r = sim.run();
  std::printf("problem %s: %s after %d steps, t = %s, %.2f s\n",
              r.problem.c_str(), r.status.c_str(), r.steps,
              format_double(r.time).c_str(), r.wall_seconds);
  if (!r.message.empty()) std::printf("  %s\n", r.message.c_str());
  std::printf("  relative drift of totals:");
  for (double d : r.relative_drift) std::printf(" %.3e", d);
  std::printf("\n  limiter activations %zu, elliptic violations %zu\n",
              r.limiter_activations, r.elliptic_violations);
  if (sim.scheme().equation().is_euler()) {
    std::printf("  min density %.6e, min pressure %.6e\n", r.min_density,
                r.min_pressure);
  }
  std::printf("  eps: %zu at min, %zu between, %zu at max\n",
              r.eps_histogram[0], r.eps_histogram[1], r.eps_histogram[2]);
  return r.exit_code;
}

int cmd_list() {
  for (const auto& name : problem_names()) {
    const ProblemSpec& p = get_problem(name);
    const std::string grid = p.dim == 1
                                 ? std::to_string(p.nx)
                                 : std::to_string(p.nx) + "x" + std::to_string(p.ny);
    std::printf("%-18s %dD  %-7s N=%d  t=%-6g eps_max=%-8g %-17s %s\n",
                name.c_str(), p.dim, grid.c_str(), p.degree, p.t_final,
                p.eps_max, p.tableau.c_str(), p.description.c_str());
  }
  return 0;
}

int cmd_verify() {
  bool ok = true;
  for (const auto& name : tableau_names()) {
    const DoubleButcherTableau& tab = get_tableau(name);
    const OrderReport rep = verify_order(tab, tab.order);
    std::printf("%-18s order %d  structural %s  order conditions %s  "
                "max residual %.3e\n",
                name.c_str(), tab.order, rep.structural_ok ? "ok" : "FAIL",
                rep.passed ? "ok" : "FAIL", rep.max_residual);
    for (const auto& v : rep.violations) std::printf("  %s\n", v.c_str());
    ok = ok && rep.passed && rep.structural_ok;
  }
  return ok ? 0 : 1;
}

int cmd_convergence(const std::string& problem, int levels, int nx,
                    int degree) {
  RunConfig cfg;
  cfg.problem = problem;
  if (nx > 0) cfg.nx = nx;
  if (degree > 0) cfg.degree = degree;
  const auto rows = convergence_study(cfg, levels);
  std::printf("%8s %24s %8s\n", "nx", "L2 error", "EOC");
  for (const auto& row : rows) {
    std::printf("%8d %24.17g %8.3f\n", row.nx, row.l2_error, row.eoc);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jin-Xin relaxation with compact Runge-Kutta flux reconstruction"};
  app.require_subcommand(1);

  RunConfig cli;
  std::optional<double> cli_cfl;
  cli.format.clear();
  std::string config_file;
  auto* run = app.add_subcommand("run", "Run a registered problem");
  run->add_option("--problem", cli.problem, "Problem name");
  run->add_option("--nx", cli.nx, "Elements in x");
  run->add_option("--ny", cli.ny, "Elements in y");
  run->add_option("--degree", cli.degree, "Polynomial degree N");
  run->add_option("--eps-max", cli.eps_max, "Largest relaxation parameter");
  run->add_option("--tableau", cli.tableau, "IMEX tableau name");
  run->add_option("--cfl", cli_cfl, "CFL coefficient");
  run->add_option("--t-final", cli.t_final, "Final time");
  run->add_option("--out", cli.output_dir, "Output directory");
  run->add_option("--format", cli.format, "Frame format")
      ->check(CLI::IsMember({"csv", "vtk"}));
  run->add_option("--output-every", cli.output_every, "Frame cadence in steps");
  run->add_option("--config", config_file, "key = value config file")
      ->check(CLI::ExistingFile);

  auto* list = app.add_subcommand("list-problems", "List registered problems");
  auto* verify = app.add_subcommand("verify-tableaux",
                                    "Check structure and order conditions");

  std::string conv_problem = "lin_advection_1d";
  int levels = 4;
  int conv_nx = 0;
  int conv_degree = 0;
  auto* conv = app.add_subcommand("convergence", "Grid refinement study");
  conv->add_option("--problem", conv_problem, "Problem with an exact solution");
  conv->add_option("--levels", levels, "Number of grids")->check(CLI::PositiveNumber);
  conv->add_option("--nx", conv_nx, "Coarsest grid");
  conv->add_option("--degree", conv_degree, "Polynomial degree N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(cli, cli_cfl, config_file);
    if (*list) return cmd_list();
    if (*verify) return cmd_verify();
    if (*conv) return cmd_convergence(conv_problem, levels, conv_nx, conv_degree);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
