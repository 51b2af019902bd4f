#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "semidg/estimator.hpp"
#include "semidg/mesh.hpp"
#include "semidg/solver.hpp"

namespace semidg {

// How MARK picks cells. The maximum strategy refines every cell whose
// indicator reaches mark_fraction times the largest indicator; it reproduces
// the strongly p-dependent mesh growth of the experiments (near-uniform
// refinement for smooth solutions, boundary-band refinement for layers).
// kTopFraction instead marks a fixed share of the cells ranked by indicator.
enum class MarkingRule { kMaximumThreshold, kTopFraction };

struct AdaptConfig {
  int max_iterations = 13;
  double mark_fraction = 0.5;
  long max_dofs = 2'000'000;
  int degree = 1;
  int quad_bump = 0;
  MarkingRule marking = MarkingRule::kMaximumThreshold;
  NewtonConfig newton;
};

// Indices of the ceil(fraction * n) largest indicators; ties broken toward
// the lower cell index.
std::vector<int> mark(const std::vector<double>& etas, double fraction);

// Maximum strategy: indices of all cells with eta >= theta * max(eta).
std::vector<int> mark_maximum(const std::vector<double>& etas, double theta);

struct AdaptRecord {
  int iteration = 0;
  int cells = 0;
  long dofs = 0;
  double estimator_total = 0.0;
  int newton_iterations = 0;
  double final_residual = 0.0;
  double max_h_ratio = 0.0;  // max over interior facets of h+ / h-
  double u_max = 0.0;        // max cell-mean of the solution
};

struct AdaptResult {
  std::vector<AdaptRecord> records;
  std::unique_ptr<Mesh> mesh;
  std::unique_ptr<DGSpace> space;
  std::unique_ptr<DGFunction> solution;
  std::unique_ptr<EstimatorReport> estimator;
};

using AdaptObserver = std::function<void(int iteration, const DGSpace&,
                                         const DGFunction&, const EstimatorReport&)>;

// SOLVE - ESTIMATE - MARK - REFINE from the 4-cell criss-cross mesh. Marking
// uses the composite cell indicator (eta_R^2 + attributed eta_J^2)^(1/2);
// refinement is conforming newest-vertex bisection. Solutions are carried to
// the refined mesh as initial Newton guesses. Stops after max_iterations or
// once the dof cap would be exceeded. NonConvergence propagates with the
// records gathered so far attached to the exception message.
AdaptResult adapt_loop(const ProblemSpec& spec, const AdaptConfig& config,
                       const AdaptObserver& observer = {});

}  // namespace semidg
