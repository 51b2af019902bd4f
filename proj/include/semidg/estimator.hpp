#pragma once

#include <vector>

#include "semidg/analysis.hpp"
#include "semidg/dgspace.hpp"
#include "semidg/forms.hpp"

namespace semidg {

// Residual/jump a posteriori indicators. Each interior facet's jump
// contribution counts once in the total and is attributed half/half to its
// two cells; boundary facets contribute fully to their single cell.
struct EstimatorReport {
  std::vector<double> eta_R2;       // per cell: ||h (f + lap u_h - |u_h|^(p-2) u_h)||^2
  std::vector<double> eta_J2;       // per cell: attributed facet jump indicators
  std::vector<double> eta_J2_facet; // per facet
  double jump_hminus2 = 0.0;        // sum over facets of ||h^-1/2 [u_h]||^2
  double total = 0.0;               // sqrt(sum_K eta_R2 + eta_J2)

  double cell_indicator(int c) const { return std::sqrt(eta_R2[c] + eta_J2[c]); }
};

// eta_J^2 per facet = ||h^1/2 [grad u_h]||^2 (interior facets only)
//                   + ||h^-1/2 [u_h]||^2 + ||h^1/2 [u_h]||^2 (all facets).
EstimatorReport estimate(const DGSpace& space, const ProblemSpec& spec,
                         const DGFunction& u, const MeshSizeField& sizes);

// total / enorm error; a flagged infinity when the error vanishes.
double effectivity(const EstimatorReport& report, const ErrorReport& err);

}  // namespace semidg
