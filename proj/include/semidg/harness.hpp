#pragma once

#include <string>
#include <vector>

#include "semidg/adapt.hpp"
#include "semidg/forms.hpp"
#include "semidg/io.hpp"
#include "semidg/solver.hpp"

namespace semidg {

// Experimental orders of convergence: log(e_i/e_{i+1}) / log(h_i/h_{i+1}).
std::vector<double> eoc(const std::vector<double>& errors,
                        const std::vector<double>& hs);

// Manufactured problem on the unit square with exact solution
// u = sin(pi x) sin(pi y), so f = 2 pi^2 u + u^(p-1) (u is nonnegative).
ProblemSpec smooth_problem(double p, double c_sigma = 10.0);

// Constant-source problem f = 1000, no known solution.
ProblemSpec constant_source_problem(double p, double c_sigma = 10.0,
                                    double f_value = 1000.0);

struct ConvergeOptions {
  int degree = 1;
  double p = 4.0;
  int levels = 5;
  double c_sigma = 10.0;
  int quad_bump = 0;
  int initial_n = 2;
  std::string out_dir = ".";
  bool write_files = true;
  bool write_vtk = false;
};

struct ConvergeResult {
  RateTable table;
  std::vector<SolveReport> reports;
  // |||u_h|||^2 + (1/q) ||u_h||_p^p per level
  std::vector<double> stability;
  std::string csv_path, svg_path;
};

// Uniform refinement study: starts from the criss-cross initial_n mesh and
// halves h per level (two full bisection sweeps reproduce the criss-cross
// layout); each level warm-starts the Newton solve from the previous one.
ConvergeResult run_converge(const ConvergeOptions& opts);

struct AdaptRunOptions {
  int degree = 1;
  double p = 2.0;
  int iterations = 13;
  double mark_fraction = 0.5;
  long max_dofs = 2'000'000;
  double c_sigma = 10.0;
  int quad_bump = 0;
  std::string out_dir = ".";
  bool write_files = true;
  bool write_vtk = true;
  double f_value = 1000.0;
};

struct AdaptRunResult {
  AdaptResult run;
  std::string csv_path;
  std::vector<std::string> vtk_paths;
};

AdaptRunResult run_adapt(const AdaptRunOptions& opts);

// "p4" for 4.0, "p2.5" for 2.5; shared by the CSV/SVG/VTK file names.
std::string format_p(double p);

}  // namespace semidg
