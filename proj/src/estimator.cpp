#include "semidg/estimator.hpp"

#include <cmath>
#include <limits>

namespace semidg {

EstimatorReport estimate(const DGSpace& space, const ProblemSpec& spec,
                         const DGFunction& u, const MeshSizeField& sizes) {
  spec.validate();
  const Mesh& mesh = space.mesh();
  const int nc = mesh.num_cells();

  EstimatorReport rep;
  rep.eta_R2.assign(nc, 0.0);
  rep.eta_J2.assign(nc, 0.0);
  rep.eta_J2_facet.assign(mesh.num_facets(), 0.0);

  // volume residual, with the broken Laplacian of u_h evaluated exactly
  const auto& rule = space.cell_rule();
  const int nq = rule.size();
  Eigen::MatrixXd hxx, hxy, hyy;
  space.basis().hessians(rule.x, rule.y, hxx, hxy, hyy);
  for (int c = 0; c < nc; ++c) {
    const AffineMap& map = space.cell_map(c);
    const auto cc = u.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd uv = space.cell_values() * uc;
    const Eigen::VectorXd vxx = hxx * uc;
    const Eigen::VectorXd vxy = hxy * uc;
    const Eigen::VectorXd vyy = hyy * uc;
    // laplacian via the metric G = J^-1 J^-T contracted with the reference
    // second derivatives
    const double g11 = map.i00 * map.i00 + map.i01 * map.i01;
    const double g12 = map.i00 * map.i10 + map.i01 * map.i11;
    const double g22 = map.i10 * map.i10 + map.i11 * map.i11;
    const double h2 = sizes.h_cell[c] * sizes.h_cell[c];
    double acc = 0.0;
    for (int q = 0; q < nq; ++q) {
      double xp, yp;
      map.to_physical(rule.x[q], rule.y[q], xp, yp);
      const double lap = g11 * vxx(q) + 2.0 * g12 * vxy(q) + g22 * vyy(q);
      const double r = spec.source(xp, yp) + lap - power_weight(uv(q), spec.p) * uv(q);
      acc += rule.w[q] * map.det * r * r;
    }
    rep.eta_R2[c] = h2 * acc;
  }

  // facet jump indicators
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& fac = mesh.facet(f);
    const FacetTrace tr = facet_trace(u, f);
    const double h = sizes.h_facet[f];
    double grad_jump2 = 0.0, val_jump2 = 0.0;
    for (size_t q = 0; q < tr.weight.size(); ++q) {
      const double jv = tr.jump_value(static_cast<int>(q));
      val_jump2 += tr.weight[q] * jv * jv;
      if (!fac.boundary) {
        const double jg = (tr.g_plus[q][0] - tr.g_minus[q][0]) * tr.normal[0] +
                          (tr.g_plus[q][1] - tr.g_minus[q][1]) * tr.normal[1];
        grad_jump2 += tr.weight[q] * jg * jg;
      }
    }
    const double eta = h * grad_jump2 + (1.0 / h) * val_jump2 + h * val_jump2;
    rep.eta_J2_facet[f] = eta;
    rep.jump_hminus2 += (1.0 / h) * val_jump2;
    if (fac.boundary) {
      rep.eta_J2[fac.cells[0]] += eta;
    } else {
      rep.eta_J2[fac.cells[0]] += 0.5 * eta;
      rep.eta_J2[fac.cells[1]] += 0.5 * eta;
    }
  }

  double total2 = 0.0;
  for (int c = 0; c < nc; ++c) total2 += rep.eta_R2[c] + rep.eta_J2[c];
  rep.total = std::sqrt(total2);
  return rep;
}

double effectivity(const EstimatorReport& report, const ErrorReport& err) {
  if (err.enorm == 0.0) return std::numeric_limits<double>::infinity();
  return report.total / err.enorm;
}

}  // namespace semidg
