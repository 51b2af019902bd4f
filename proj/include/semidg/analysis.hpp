#pragma once

#include <vector>

#include "semidg/dgspace.hpp"
#include "semidg/forms.hpp"

namespace semidg {

// Error measures of u - u_h against the exact solution of a ProblemSpec.
// Totals recombine from the per-cell contributions: quadratic quantities as
// sqrt(sum of squares), the Lp norm as (sum of p-th powers)^(1/p). Interior
// facet jump terms are split half/half between the two adjacent cells.
struct ErrorReport {
  double enorm = 0.0;      // broken H1 norm with sqrt(sigma)-weighted jumps
  double lp = 0.0;
  double quasinorm = 0.0;  // |||u - u_h|||_(u,p)
  double l2 = 0.0;
  std::vector<double> enorm_cell;
  std::vector<double> lp_cell;
  std::vector<double> quasinorm_cell;
  std::vector<double> l2_cell;
};

// Evaluated with quadrature elevated by quad_bump degrees above the space
// default, so the measured rates are not polluted by quadrature error.
ErrorReport error_report(const DGSpace& space, const DGFunction& u,
                         const ProblemSpec& spec, int quad_bump = 4);

// Mesh-dependent H1 norm of a discrete function:
// (sum_K |grad w|^2 + sum_e sigma [w]^2)^(1/2).
double energy_norm(const DGFunction& w, const std::vector<double>& sigma);

// Lp norm of a discrete function, p >= 1.
double lp_norm(const DGFunction& w, double p);

// Quasinorm |||v|||_(w,p) = (integral of |v|^2 (|w| + |v|)^(p-2))^(1/2),
// evaluated with a shared quadrature rule so the Lp lower bound holds
// pointwise. v and w must live on the same space.
double quasinorm(const DGFunction& v, const DGFunction& w, double p);

// Nodal-averaging reconstruction into the conforming zero-trace subspace:
// interior Lagrange nodes average the adjacent cell values, boundary nodes
// are set to zero.
DGFunction reconstruct(const DGFunction& v);

// Both sides of the reconstruction stability bound for alpha = 0, 1:
// lhs_alpha = sum_K |v - E(v)|^2_{H^alpha(K)},
// rhs_alpha = sum_e || h^(1/2-alpha) [v] ||^2_{L2(e)}.
struct KPStabilitySample {
  double lhs0, rhs0;
  double lhs1, rhs1;
};
KPStabilitySample kp_stability_sample(const DGFunction& v);

// sum over facets of the squared weighted scalar jump, h_facet^exponent [v]^2.
double jump_norm2(const DGFunction& v, const MeshSizeField& sizes, double exponent);

}  // namespace semidg
