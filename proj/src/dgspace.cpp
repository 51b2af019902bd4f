#include "semidg/dgspace.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace semidg {

namespace {

AffineMap make_map(const Mesh& mesh, int c) {
  const auto& v = mesh.cell(c);
  const Point& a = mesh.vertex(v[0]);
  const Point& b = mesh.vertex(v[1]);
  const Point& d = mesh.vertex(v[2]);
  AffineMap m;
  m.x0 = a.x;
  m.y0 = a.y;
  m.j00 = b.x - a.x;
  m.j01 = d.x - a.x;
  m.j10 = b.y - a.y;
  m.j11 = d.y - a.y;
  m.det = m.j00 * m.j11 - m.j01 * m.j10;
  m.i00 = m.j11 / m.det;
  m.i01 = -m.j01 / m.det;
  m.i10 = -m.j10 / m.det;
  m.i11 = m.j00 / m.det;
  return m;
}

}  // namespace

DGSpace::DGSpace(const Mesh& mesh, int degree, double nonlinearity_p, int quad_bump)
    : mesh_(&mesh), degree_(degree), basis_(degree) {
  if (degree < 1) throw std::invalid_argument("DGSpace: degree must be >= 1");
  if (nonlinearity_p < 2.0) throw std::invalid_argument("DGSpace: p must be >= 2");
  if (quad_bump < 0) throw std::invalid_argument("DGSpace: quad_bump must be >= 0");
  const int cell_deg =
      std::max(2 * degree + 2,
               static_cast<int>(std::ceil(degree * nonlinearity_p)) + 2) +
      quad_bump;
  const int facet_deg = 2 * degree + 2 + quad_bump;
  cell_rule_ = triangle_rule(cell_deg);
  facet_rule_ = semidg::facet_rule(facet_deg);

  maps_.resize(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) maps_[c] = make_map(mesh, c);

  cell_values_ = basis_.values(cell_rule_.x, cell_rule_.y);
  basis_.gradients(cell_rule_.x, cell_rule_.y, cell_dx_, cell_dy_);
}

void evaluate(const DGFunction& f, int cell, const std::vector<double>& xr,
              const std::vector<double>& yr, std::vector<double>& values,
              std::vector<std::array<double, 2>>& gradients) {
  const DGSpace& sp = *f.space;
  if (cell < 0 || cell >= sp.mesh().num_cells())
    throw std::invalid_argument("evaluate: cell index out of range");
  const auto coeffs = f.cell_coeffs(cell);
  const Eigen::Map<const Eigen::VectorXd> u(coeffs.data(), coeffs.size());

  const Eigen::MatrixXd vals = sp.basis().values(xr, yr);
  Eigen::MatrixXd dx, dy;
  sp.basis().gradients(xr, yr, dx, dy);
  const Eigen::VectorXd v = vals * u;
  const Eigen::VectorXd gxr = dx * u;
  const Eigen::VectorXd gyr = dy * u;

  const AffineMap& map = sp.cell_map(cell);
  const int np = static_cast<int>(xr.size());
  values.resize(np);
  gradients.resize(np);
  for (int q = 0; q < np; ++q) {
    values[q] = v(q);
    map.grad_to_physical(gxr(q), gyr(q), gradients[q][0], gradients[q][1]);
  }
}

DGFunction project_l2(const std::function<double(double, double)>& g,
                      const DGSpace& space) {
  DGFunction out(space);
  const auto& rule = space.cell_rule();
  const int nq = rule.size();
  const int nd = space.dofs_per_cell();
  for (int c = 0; c < space.mesh().num_cells(); ++c) {
    const AffineMap& map = space.cell_map(c);
    auto coeffs = out.cell_coeffs(c);
    for (int q = 0; q < nq; ++q) {
      double xp, yp;
      map.to_physical(rule.x[q], rule.y[q], xp, yp);
      // orthonormal reference basis: cell mass matrix is det * I
      const double s = rule.w[q] * g(xp, yp);
      for (int i = 0; i < nd; ++i) coeffs[i] += s * space.cell_values()(q, i);
    }
  }
  return out;
}

FacetBasisTable tabulate_facet_basis(const DGSpace& space, int facet, int side) {
  const Mesh& mesh = space.mesh();
  const Facet& f = mesh.facet(facet);
  const int c = f.cells[side];
  if (c < 0) throw std::invalid_argument("tabulate_facet_basis: missing side");
  const Point& a = mesh.vertex(f.verts[0]);
  const Point& b = mesh.vertex(f.verts[1]);
  const auto& rule = space.facet_rule();
  const int nq = rule.size();
  std::vector<double> xr(nq), yr(nq);
  const AffineMap& map = space.cell_map(c);
  for (int q = 0; q < nq; ++q) {
    const double t = rule.t[q];
    map.to_reference(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), xr[q], yr[q]);
  }
  FacetBasisTable table;
  table.val = space.basis().values(xr, yr);
  Eigen::MatrixXd dx, dy;
  space.basis().gradients(xr, yr, dx, dy);
  table.gx.resize(nq, space.dofs_per_cell());
  table.gy.resize(nq, space.dofs_per_cell());
  for (int q = 0; q < nq; ++q)
    for (int i = 0; i < space.dofs_per_cell(); ++i)
      map.grad_to_physical(dx(q, i), dy(q, i), table.gx(q, i), table.gy(q, i));
  return table;
}

FacetTrace facet_trace(const DGFunction& f, int facet) {
  const DGSpace& sp = *f.space;
  const Mesh& mesh = sp.mesh();
  if (facet < 0 || facet >= mesh.num_facets())
    throw std::invalid_argument("facet_trace: facet index out of range");
  const Facet& fac = mesh.facet(facet);
  const auto& rule = sp.facet_rule();
  const int nq = rule.size();

  FacetTrace tr;
  tr.boundary = fac.boundary;
  tr.normal = fac.normal;
  tr.length = fac.length;
  const Point& a = mesh.vertex(fac.verts[0]);
  const Point& b = mesh.vertex(fac.verts[1]);
  tr.x.resize(nq);
  tr.y.resize(nq);
  tr.weight.resize(nq);
  for (int q = 0; q < nq; ++q) {
    tr.x[q] = a.x + rule.t[q] * (b.x - a.x);
    tr.y[q] = a.y + rule.t[q] * (b.y - a.y);
    tr.weight[q] = rule.w[q] * fac.length;
  }

  for (int side = 0; side < 2; ++side) {
    const int c = fac.cells[side];
    if (c < 0) break;
    const auto table = tabulate_facet_basis(sp, facet, side);
    const auto coeffs = f.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> u(coeffs.data(), coeffs.size());
    const Eigen::VectorXd v = table.val * u;
    const Eigen::VectorXd gx = table.gx * u;
    const Eigen::VectorXd gy = table.gy * u;
    auto& vv = (side == 0) ? tr.v_plus : tr.v_minus;
    auto& gg = (side == 0) ? tr.g_plus : tr.g_minus;
    vv.resize(nq);
    gg.resize(nq);
    for (int q = 0; q < nq; ++q) {
      vv[q] = v(q);
      gg[q] = {gx(q), gy(q)};
    }
  }
  return tr;
}

DGFunction transfer(const DGFunction& coarse, const DGSpace& fine_space,
                    const std::vector<int>& parent) {
  const DGSpace& cs = *coarse.space;
  if (static_cast<int>(parent.size()) != fine_space.mesh().num_cells())
    throw std::invalid_argument("transfer: parent map size mismatch");
  if (cs.degree() != fine_space.degree())
    throw std::invalid_argument("transfer: degree mismatch");
  DGFunction out(fine_space);
  const auto& rule = fine_space.cell_rule();
  const int nq = rule.size();
  const int nd = fine_space.dofs_per_cell();
  std::vector<double> xr(nq), yr(nq);
  for (int c = 0; c < fine_space.mesh().num_cells(); ++c) {
    const int pc = parent[c];
    const AffineMap& fine_map = fine_space.cell_map(c);
    const AffineMap& coarse_map = cs.cell_map(pc);
    for (int q = 0; q < nq; ++q) {
      double xp, yp;
      fine_map.to_physical(rule.x[q], rule.y[q], xp, yp);
      coarse_map.to_reference(xp, yp, xr[q], yr[q]);
    }
    const Eigen::MatrixXd vals = cs.basis().values(xr, yr);
    const auto cc = coarse.cell_coeffs(pc);
    const Eigen::Map<const Eigen::VectorXd> u(cc.data(), cc.size());
    const Eigen::VectorXd v = vals * u;  // parent polynomial at child points
    auto oc = out.cell_coeffs(c);
    for (int q = 0; q < nq; ++q)
      for (int i = 0; i < nd; ++i) oc[i] += rule.w[q] * v(q) * fine_space.cell_values()(q, i);
  }
  return out;
}

void write_dgfunction(const DGFunction& f, std::ostream& out) {
  const DGSpace& sp = *f.space;
  out.precision(17);
  out << sp.degree() << " " << sp.mesh().num_cells() << " " << sp.dofs_per_cell()
      << "\n";
  for (int c = 0; c < sp.mesh().num_cells(); ++c) {
    const auto cc = f.cell_coeffs(c);
    for (int i = 0; i < sp.dofs_per_cell(); ++i) out << (i ? " " : "") << cc[i];
    out << "\n";
  }
}

void read_dgfunction(DGFunction& f, std::istream& in) {
  const DGSpace& sp = *f.space;
  int k = 0, nc = 0, nd = 0;
  if (!(in >> k >> nc >> nd)) throw std::runtime_error("dgfunction read: bad header");
  if (k != sp.degree() || nc != sp.mesh().num_cells() || nd != sp.dofs_per_cell())
    throw std::runtime_error("dgfunction read: shape mismatch");
  for (double& c : f.coeffs)
    if (!(in >> c)) throw std::runtime_error("dgfunction read: bad coefficient");
}

}  // namespace semidg
