#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semidg/dgspace.hpp"
#include "semidg/forms.hpp"
#include "semidg/linalg.hpp"

namespace semidg {

struct NewtonConfig {
  double tol_residual = 1e-10;  // absolute l2 tolerance on F(U)
  int max_iter = 50;            // per continuation stage
  int max_halvings = 20;
  double cg_rel_tol = 1e-12;
  // Exponent schedule; empty means the default (2, 4, ..., p when starting
  // cold, the single target stage when warm-started).
  std::vector<double> continuation;
};

struct StageReport {
  double p = 0.0;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;  // includes the initial residual
  std::vector<int> cg_iterations;
};

struct SolveReport {
  bool converged = false;
  double final_residual = 0.0;
  std::vector<StageReport> stages;

  int total_newton_iterations() const {
    int n = 0;
    for (const auto& s : stages) n += s.iterations;
    return n;
  }
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, SolveReport rep)
      : std::runtime_error(what), report(std::move(rep)) {}
  SolveReport report;
};

// Strictly increasing exponent schedule 2, 4, ..., ending at p.
std::vector<double> default_continuation(double p);

// Damped Newton for A_h(u,v) + B(u;u,v) = (f,v). Each step solves
// (A + J_B(U)) delta = -F(U) by CG with cell-block Jacobi preconditioning and
// halves the step until the residual norm decreases. Throws
// NonConvergenceError (carrying the report) or LinearSolveError.
std::pair<DGFunction, SolveReport> solve(const DGSpace& space, const ProblemSpec& spec,
                                         const NewtonConfig& config = {},
                                         const DGFunction* initial = nullptr);

}  // namespace semidg
