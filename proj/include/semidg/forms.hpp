#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "semidg/dgspace.hpp"
#include "semidg/linalg.hpp"
#include "semidg/mesh.hpp"

namespace semidg {

// Problem data for -laplace(u) + |u|^(p-2) u = f with homogeneous Dirichlet
// conditions, enforced weakly through the boundary facet terms.
struct ProblemSpec {
  double p = 2.0;
  std::function<double(double, double)> source;
  double c_sigma = 10.0;
  std::function<double(double, double)> exact;  // optional
  std::function<std::array<double, 2>(double, double)> exact_grad;

  void validate() const;
  double conjugate_q() const { return p / (p - 1.0); }
};

// Pointwise reaction weight |u|^(p-2); exactly 1 for p = 2.
inline double power_weight(double u, double p) {
  if (p == 2.0) return 1.0;
  return std::pow(std::abs(u), p - 2.0);
}

// sigma = C_sigma k^2 / h per facet.
std::vector<double> penalty_field(const DGSpace& space, const ProblemSpec& spec,
                                  const MeshSizeField& sizes);

// Interior penalty matrix: volume gradients, minus the symmetric consistency
// terms, plus the sigma penalty; boundary facets use one-sided values with
// [u] = u n. For arguments in the space, the gradient averages already have
// degree k-1, so the projection in the averages acts as the identity.
BlockSparseMatrix assemble_bilinear(const DGSpace& space, const ProblemSpec& spec,
                                    const std::vector<double>& sigma);

// b_i(U) = integral of |u_h|^(p-2) u_h phi_i.
std::vector<double> assemble_semilinear(const DGSpace& space, const ProblemSpec& spec,
                                        const DGFunction& u);

// Cell-local Newton blocks: integral of (p-1)|u_h|^(p-2) phi_j phi_i.
BlockSparseMatrix assemble_jacobian_semilinear(const DGSpace& space,
                                               const ProblemSpec& spec,
                                               const DGFunction& u);

// Load vector l_i = integral of f phi_i.
std::vector<double> assemble_load(const DGSpace& space, const ProblemSpec& spec);

// F(U) = A U + b(U) - l.
std::vector<double> assemble_residual(const BlockSparseMatrix& a,
                                      const DGSpace& space, const ProblemSpec& spec,
                                      const DGFunction& u,
                                      const std::vector<double>& load);

}  // namespace semidg
