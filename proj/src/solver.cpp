#include "semidg/solver.hpp"

#include <cmath>

#include "semidg/linalg.hpp"

namespace semidg {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> default_continuation(double p) {
  std::vector<double> seq{2.0};
  while (seq.back() + 2.0 < p) seq.push_back(seq.back() + 2.0);
  if (p > 2.0) seq.push_back(p);
  return seq;
}

std::pair<DGFunction, SolveReport> solve(const DGSpace& space, const ProblemSpec& spec,
                                         const NewtonConfig& config,
                                         const DGFunction* initial) {
  spec.validate();
  std::vector<double> stages = config.continuation;
  if (stages.empty())
    stages = initial ? std::vector<double>{spec.p} : default_continuation(spec.p);
  if (stages.back() != spec.p)
    throw std::invalid_argument("solve: continuation must end at the target p");
  for (size_t i = 0; i + 1 < stages.size(); ++i)
    if (!(stages[i] < stages[i + 1]))
      throw std::invalid_argument("solve: continuation must be strictly increasing");

  const MeshSizeField sizes = mesh_size(space.mesh());
  const std::vector<double> sigma = penalty_field(space, spec, sizes);
  const BlockSparseMatrix a = assemble_bilinear(space, spec, sigma);
  const std::vector<double> load = assemble_load(space, spec);

  DGFunction u = initial ? *initial : DGFunction(space);
  SolveReport report;

  for (double stage_p : stages) {
    ProblemSpec stage_spec = spec;
    stage_spec.p = stage_p;

    StageReport stage;
    stage.p = stage_p;

    std::vector<double> f = assemble_residual(a, space, stage_spec, u, load);
    double rnorm = norm2(f);
    stage.residual_history.push_back(rnorm);

    while (rnorm > config.tol_residual) {
      if (stage.iterations >= config.max_iter) {
        stage.final_residual = rnorm;
        report.stages.push_back(stage);
        report.final_residual = rnorm;
        throw NonConvergenceError("newton: iteration limit at p = " +
                                      std::to_string(stage_p),
                                  report);
      }

      BlockSparseMatrix jsys = a;
      jsys.add_diagonal_of(assemble_jacobian_semilinear(space, stage_spec, u));

      std::vector<double> rhs(f.size());
      for (size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
      std::vector<double> delta;
      const CGReport cg = cg_block_jacobi(jsys, rhs, delta, config.cg_rel_tol);
      stage.cg_iterations.push_back(cg.iterations);

      // backtracking on the residual norm
      double lambda = 1.0;
      bool accepted = false;
      DGFunction trial(space);
      for (int h = 0; h <= config.max_halvings; ++h) {
        for (size_t i = 0; i < u.coeffs.size(); ++i)
          trial.coeffs[i] = u.coeffs[i] + lambda * delta[i];
        std::vector<double> ftrial = assemble_residual(a, space, stage_spec, trial, load);
        const double rtrial = norm2(ftrial);
        if (rtrial < rnorm) {
          u.coeffs = trial.coeffs;
          f = std::move(ftrial);
          rnorm = rtrial;
          accepted = true;
          break;
        }
        lambda *= 0.5;
      }
      ++stage.iterations;
      stage.residual_history.push_back(rnorm);
      if (!accepted) {
        stage.final_residual = rnorm;
        report.stages.push_back(stage);
        report.final_residual = rnorm;
        throw NonConvergenceError("newton: damping exhausted at p = " +
                                      std::to_string(stage_p),
                                  report);
      }
    }

    stage.final_residual = rnorm;
    report.stages.push_back(stage);
    report.final_residual = rnorm;
  }

  report.converged = true;
  return {std::move(u), std::move(report)};
}

}  // namespace semidg
