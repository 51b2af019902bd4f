#include "semidg/analysis.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace semidg {

ErrorReport error_report(const DGSpace& space, const DGFunction& u,
                         const ProblemSpec& spec, int quad_bump) {
  if (!spec.exact || !spec.exact_grad)
    throw std::invalid_argument("error_report: exact solution required");
  const Mesh& mesh = space.mesh();
  const int nc = mesh.num_cells();
  const int nd = space.dofs_per_cell();
  const double p = spec.p;

  ErrorReport rep;
  std::vector<double> enorm2(nc, 0.0), lpp(nc, 0.0), quasi2(nc, 0.0), l22(nc, 0.0);

  const TriQuadRule rule = triangle_rule(space.cell_rule().degree + quad_bump);
  const int nq = rule.size();
  const Eigen::MatrixXd vals = space.basis().values(rule.x, rule.y);
  Eigen::MatrixXd dx, dy;
  space.basis().gradients(rule.x, rule.y, dx, dy);

  for (int c = 0; c < nc; ++c) {
    const AffineMap& map = space.cell_map(c);
    const auto cc = u.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd uh = vals * uc;
    const Eigen::VectorXd gxr = dx * uc;
    const Eigen::VectorXd gyr = dy * uc;
    for (int q = 0; q < nq; ++q) {
      double xp, yp;
      map.to_physical(rule.x[q], rule.y[q], xp, yp);
      const double w = rule.w[q] * map.det;
      double ghx, ghy;
      map.grad_to_physical(gxr(q), gyr(q), ghx, ghy);
      const double ue = spec.exact(xp, yp);
      const auto ge = spec.exact_grad(xp, yp);
      const double ev = ue - uh(q);
      const double egx = ge[0] - ghx, egy = ge[1] - ghy;
      enorm2[c] += w * (egx * egx + egy * egy);
      lpp[c] += w * std::pow(std::abs(ev), p);
      quasi2[c] += w * ev * ev * std::pow(std::abs(ue) + std::abs(ev), p - 2.0);
      l22[c] += w * ev * ev;
    }
  }

  // jump terms of the energy norm: the exact solution is continuous, so the
  // interior jump reduces to -[u_h]; boundary facets see (u - u_h) n.
  const MeshSizeField sizes = mesh_size(mesh);
  const std::vector<double> sigma = penalty_field(space, spec, sizes);
  const FacetQuadRule frule = facet_rule(space.facet_rule().degree + quad_bump);
  const int nqf = frule.size();
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& fac = mesh.facet(f);
    const Point& a = mesh.vertex(fac.verts[0]);
    const Point& b = mesh.vertex(fac.verts[1]);
    const int nsides = fac.boundary ? 1 : 2;

    // traces of u_h on the elevated rule
    Eigen::VectorXd v_side[2];
    for (int s = 0; s < nsides; ++s) {
      const int c = fac.cells[s];
      const AffineMap& map = space.cell_map(c);
      std::vector<double> xr(nqf), yr(nqf);
      for (int q = 0; q < nqf; ++q) {
        const double t = frule.t[q];
        map.to_reference(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), xr[q], yr[q]);
      }
      const auto cc = u.cell_coeffs(fac.cells[s]);
      const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), nd);
      v_side[s] = space.basis().values(xr, yr) * uc;
    }

    double jump2 = 0.0;
    for (int q = 0; q < nqf; ++q) {
      const double w = frule.w[q] * fac.length;
      double jv;
      if (fac.boundary) {
        const double xq = a.x + frule.t[q] * (b.x - a.x);
        const double yq = a.y + frule.t[q] * (b.y - a.y);
        jv = spec.exact(xq, yq) - v_side[0](q);
      } else {
        jv = v_side[1](q) - v_side[0](q);  // exact traces cancel
      }
      jump2 += w * jv * jv;
    }
    jump2 *= sigma[f];
    if (fac.boundary) {
      enorm2[fac.cells[0]] += jump2;
    } else {
      enorm2[fac.cells[0]] += 0.5 * jump2;
      enorm2[fac.cells[1]] += 0.5 * jump2;
    }
  }

  rep.enorm_cell.resize(nc);
  rep.lp_cell.resize(nc);
  rep.quasinorm_cell.resize(nc);
  rep.l2_cell.resize(nc);
  double se = 0.0, sp = 0.0, sq = 0.0, s2 = 0.0;
  for (int c = 0; c < nc; ++c) {
    se += enorm2[c];
    sp += lpp[c];
    sq += quasi2[c];
    s2 += l22[c];
    rep.enorm_cell[c] = std::sqrt(enorm2[c]);
    rep.lp_cell[c] = std::pow(lpp[c], 1.0 / p);
    rep.quasinorm_cell[c] = std::sqrt(quasi2[c]);
    rep.l2_cell[c] = std::sqrt(l22[c]);
  }
  rep.enorm = std::sqrt(se);
  rep.lp = std::pow(sp, 1.0 / p);
  rep.quasinorm = std::sqrt(sq);
  rep.l2 = std::sqrt(s2);
  return rep;
}

double energy_norm(const DGFunction& w, const std::vector<double>& sigma) {
  const DGSpace& sp = *w.space;
  const Mesh& mesh = sp.mesh();
  const auto& rule = sp.cell_rule();
  const int nq = rule.size();
  double total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = sp.cell_map(c);
    const auto cc = w.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd gxr = sp.cell_dx() * uc;
    const Eigen::VectorXd gyr = sp.cell_dy() * uc;
    for (int q = 0; q < nq; ++q) {
      double gx, gy;
      map.grad_to_physical(gxr(q), gyr(q), gx, gy);
      total += rule.w[q] * map.det * (gx * gx + gy * gy);
    }
  }
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const FacetTrace tr = facet_trace(w, f);
    double jump2 = 0.0;
    for (size_t q = 0; q < tr.weight.size(); ++q) {
      const double jv = tr.jump_value(static_cast<int>(q));
      jump2 += tr.weight[q] * jv * jv;
    }
    total += sigma[f] * jump2;
  }
  return std::sqrt(total);
}

double lp_norm(const DGFunction& w, double p) {
  const DGSpace& sp = *w.space;
  const auto& rule = sp.cell_rule();
  const int nq = rule.size();
  double total = 0.0;
  for (int c = 0; c < sp.mesh().num_cells(); ++c) {
    const AffineMap& map = sp.cell_map(c);
    const auto cc = w.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd v = sp.cell_values() * uc;
    for (int q = 0; q < nq; ++q)
      total += rule.w[q] * map.det * std::pow(std::abs(v(q)), p);
  }
  return std::pow(total, 1.0 / p);
}

double quasinorm(const DGFunction& v, const DGFunction& w, double p) {
  if (v.space != w.space)
    throw std::invalid_argument("quasinorm: arguments on different spaces");
  const DGSpace& sp = *v.space;
  const auto& rule = sp.cell_rule();
  const int nq = rule.size();
  double total = 0.0;
  for (int c = 0; c < sp.mesh().num_cells(); ++c) {
    const AffineMap& map = sp.cell_map(c);
    const auto vc = v.cell_coeffs(c);
    const auto wc = w.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> vm(vc.data(), vc.size());
    const Eigen::Map<const Eigen::VectorXd> wm(wc.data(), wc.size());
    const Eigen::VectorXd vv = sp.cell_values() * vm;
    const Eigen::VectorXd wv = sp.cell_values() * wm;
    for (int q = 0; q < nq; ++q)
      total += rule.w[q] * map.det * vv(q) * vv(q) *
               std::pow(std::abs(wv(q)) + std::abs(vv(q)), p - 2.0);
  }
  return std::sqrt(total);
}

DGFunction reconstruct(const DGFunction& v) {
  const DGSpace& sp = *v.space;
  const Mesh& mesh = sp.mesh();
  const LagrangeNodes ln = lagrange_nodes(sp.basis());
  const int nd = sp.dofs_per_cell();
  const int k = sp.degree();

  // global node keys: vertex nodes by vertex id, edge nodes by (facet, t)
  std::map<std::pair<int, int>, std::pair<double, int>> acc;  // key -> (sum, count)
  std::vector<Eigen::VectorXd> nodal(mesh.num_cells());

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto cc = v.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    nodal[c] = ln.modal_to_nodal * uc;
    for (int i = 0; i < nd; ++i) {
      const auto& node = ln.nodes[i];
      if (node.kind == LagrangeNodes::kInterior) continue;
      std::pair<int, int> key;
      if (node.kind == LagrangeNodes::kVertex) {
        key = {-1, mesh.cell(c)[node.sub]};
      } else {
        const int f = mesh.cell_facets(c)[node.sub];
        const auto ends = mesh.edge_vertices(c, node.sub);
        const int t = (ends[0] < ends[1]) ? node.idx : k - node.idx;
        key = {f, t};
      }
      auto& slot = acc[key];
      slot.first += nodal[c](i);
      slot.second += 1;
    }
  }

  DGFunction out(sp);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    Eigen::VectorXd values = nodal[c];
    for (int i = 0; i < nd; ++i) {
      const auto& node = ln.nodes[i];
      if (node.kind == LagrangeNodes::kInterior) continue;
      bool on_boundary = false;
      std::pair<int, int> key;
      if (node.kind == LagrangeNodes::kVertex) {
        const int gv = mesh.cell(c)[node.sub];
        key = {-1, gv};
        on_boundary = mesh.vertex_on_boundary(gv);
      } else {
        const int f = mesh.cell_facets(c)[node.sub];
        const auto ends = mesh.edge_vertices(c, node.sub);
        const int t = (ends[0] < ends[1]) ? node.idx : k - node.idx;
        key = {f, t};
        on_boundary = mesh.facet(f).boundary;
      }
      if (on_boundary) {
        values(i) = 0.0;
      } else {
        const auto& slot = acc.at(key);
        values(i) = slot.first / slot.second;
      }
    }
    const Eigen::VectorXd modal = ln.nodal_to_modal * values;
    auto oc = out.cell_coeffs(c);
    for (int i = 0; i < nd; ++i) oc[i] = modal(i);
  }
  return out;
}

double jump_norm2(const DGFunction& v, const MeshSizeField& sizes, double exponent) {
  const DGSpace& sp = *v.space;
  double total = 0.0;
  for (int f = 0; f < sp.mesh().num_facets(); ++f) {
    const FacetTrace tr = facet_trace(v, f);
    double jump2 = 0.0;
    for (size_t q = 0; q < tr.weight.size(); ++q) {
      const double jv = tr.jump_value(static_cast<int>(q));
      jump2 += tr.weight[q] * jv * jv;
    }
    total += std::pow(sizes.h_facet[f], exponent) * jump2;
  }
  return total;
}

KPStabilitySample kp_stability_sample(const DGFunction& v) {
  const DGSpace& sp = *v.space;
  const Mesh& mesh = sp.mesh();
  const DGFunction e = reconstruct(v);

  DGFunction diff(sp);
  for (size_t i = 0; i < diff.coeffs.size(); ++i)
    diff.coeffs[i] = v.coeffs[i] - e.coeffs[i];

  KPStabilitySample s{0.0, 0.0, 0.0, 0.0};
  // lhs: L2 and H1-seminorm of v - E(v), cellwise
  const auto& rule = sp.cell_rule();
  const int nq = rule.size();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = sp.cell_map(c);
    const auto cc = diff.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd vv = sp.cell_values() * uc;
    const Eigen::VectorXd gxr = sp.cell_dx() * uc;
    const Eigen::VectorXd gyr = sp.cell_dy() * uc;
    for (int q = 0; q < nq; ++q) {
      const double w = rule.w[q] * map.det;
      s.lhs0 += w * vv(q) * vv(q);
      double gx, gy;
      map.grad_to_physical(gxr(q), gyr(q), gx, gy);
      s.lhs1 += w * (gx * gx + gy * gy);
    }
  }
  const MeshSizeField sizes = mesh_size(mesh);
  s.rhs0 = jump_norm2(v, sizes, 1.0);    // h^(1/2) weight, squared
  s.rhs1 = jump_norm2(v, sizes, -1.0);   // h^(-1/2) weight, squared
  return s;
}

}  // namespace semidg
