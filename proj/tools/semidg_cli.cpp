// Command-line front end; talks to the solver library exclusively through
// the C API in semidg.h. Exit codes: 0 success, 1 usage error, 2 solver
// failure.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "semidg.h"

namespace {

int map_status(semidg_status st) {
  if (st == SEMIDG_OK) return 0;
  std::fprintf(stderr, "error: %s: %s\n", semidg_status_message(st),
               semidg_last_error());
  if (st == SEMIDG_ERR_NONCONVERGENCE || st == SEMIDG_ERR_LINEAR_SOLVE) return 2;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior-penalty dG solver for -lap(u) + |u|^(p-2) u = f "
               "on the unit square"};
  app.require_subcommand(1);

  semidg_converge_opts copts;
  semidg_converge_opts_init(&copts);
  std::string cout_dir = ".";
  auto* conv = app.add_subcommand(
      "converge", "Uniform-refinement convergence study (manufactured solution)");
  conv->add_option("--k", copts.degree, "polynomial degree")->capture_default_str();
  conv->add_option("--p", copts.p, "nonlinearity exponent (>= 2)")
      ->capture_default_str();
  conv->add_option("--levels", copts.levels, "number of uniform levels")
      ->capture_default_str();
  conv->add_option("--csigma", copts.c_sigma, "penalty constant")
      ->capture_default_str();
  conv->add_option("--quad-bump", copts.quad_bump, "extra quadrature degree")
      ->capture_default_str();
  conv->add_option("--out", cout_dir, "output directory")->capture_default_str();
  bool conv_vtk = false;
  conv->add_flag("--vtk", conv_vtk, "write VTK output per level");

  semidg_adapt_opts aopts;
  semidg_adapt_opts_init(&aopts);
  std::string aout_dir = ".";
  auto* adapt = app.add_subcommand(
      "adapt", "Adaptive refinement run with constant source f = 1000");
  adapt->add_option("--k", aopts.degree, "polynomial degree")->capture_default_str();
  adapt->add_option("--p", aopts.p, "nonlinearity exponent (>= 2)")
      ->capture_default_str();
  adapt->add_option("--iters", aopts.iterations, "adaptive iterations")
      ->capture_default_str();
  adapt->add_option("--mark-frac", aopts.mark_fraction,
                    "marking threshold as a fraction of the largest indicator")
      ->capture_default_str();
  adapt->add_option("--max-dofs", aopts.max_dofs, "degree-of-freedom cap")
      ->capture_default_str();
  adapt->add_option("--csigma", aopts.c_sigma, "penalty constant")
      ->capture_default_str();
  adapt->add_option("--out", aout_dir, "output directory")->capture_default_str();
  bool adapt_vtk = true;
  adapt->add_flag("--vtk,!--no-vtk", adapt_vtk, "write VTK output per iteration");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (conv->parsed()) {
    copts.out_dir = cout_dir.c_str();
    copts.write_vtk = conv_vtk ? 1 : 0;
    return map_status(semidg_run_converge(&copts));
  }
  if (adapt->parsed()) {
    aopts.out_dir = aout_dir.c_str();
    aopts.write_vtk = adapt_vtk ? 1 : 0;
    return map_status(semidg_run_adapt(&aopts));
  }
  if (selftest->parsed()) {
    const int failures = semidg_selftest();
    return failures == 0 ? 0 : 1;
  }
  return 1;
}
