#include "semidg/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace semidg {

void ProblemSpec::validate() const {
  if (!(p >= 2.0)) throw std::invalid_argument("ProblemSpec: p must be >= 2");
  if (!(c_sigma > 0.0)) throw std::invalid_argument("ProblemSpec: C_sigma must be > 0");
  if (!source) throw std::invalid_argument("ProblemSpec: source required");
}

std::vector<double> penalty_field(const DGSpace& space, const ProblemSpec& spec,
                                  const MeshSizeField& sizes) {
  const double k2 = static_cast<double>(space.degree()) * space.degree();
  std::vector<double> sigma(sizes.h_facet.size());
  for (size_t f = 0; f < sigma.size(); ++f) sigma[f] = spec.c_sigma * k2 / sizes.h_facet[f];
  return sigma;
}

namespace {

std::vector<std::pair<int, int>> dg_pattern(const Mesh& mesh) {
  std::vector<std::pair<int, int>> pattern;
  pattern.reserve(mesh.num_cells() + 2 * mesh.num_facets());
  for (int c = 0; c < mesh.num_cells(); ++c) pattern.emplace_back(c, c);
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& fac = mesh.facet(f);
    if (fac.boundary) continue;
    pattern.emplace_back(fac.cells[0], fac.cells[1]);
    pattern.emplace_back(fac.cells[1], fac.cells[0]);
  }
  return pattern;
}

}  // namespace

BlockSparseMatrix assemble_bilinear(const DGSpace& space, const ProblemSpec& spec,
                                    const std::vector<double>& sigma) {
  spec.validate();
  if (sigma.size() != static_cast<size_t>(space.mesh().num_facets()))
    throw std::invalid_argument("assemble_bilinear: sigma size mismatch");
  const Mesh& mesh = space.mesh();
  const int nd = space.dofs_per_cell();
  BlockSparseMatrix a(mesh.num_cells(), nd, dg_pattern(mesh));

  // volume term: grad u . grad v
  const auto& rule = space.cell_rule();
  const int nq = rule.size();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = space.cell_map(c);
    Eigen::MatrixXd gx(nq, nd), gy(nq, nd);
    for (int q = 0; q < nq; ++q)
      for (int i = 0; i < nd; ++i)
        map.grad_to_physical(space.cell_dx()(q, i), space.cell_dy()(q, i), gx(q, i),
                             gy(q, i));
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nd, nd);
    for (int q = 0; q < nq; ++q) {
      const double w = rule.w[q] * map.det;
      local.noalias() += w * (gx.row(q).transpose() * gx.row(q) +
                              gy.row(q).transpose() * gy.row(q));
    }
    a.add_block(c, c, local);
  }

  // facet terms
  const auto& frule = space.facet_rule();
  const int nqf = frule.size();
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& fac = mesh.facet(f);
    const double nx = fac.normal[0], ny = fac.normal[1];
    const double sig = sigma[f];
    const int nsides = fac.boundary ? 1 : 2;
    const double sign[2] = {1.0, -1.0};
    const double avg = fac.boundary ? 1.0 : 0.5;

    FacetBasisTable table[2];
    for (int s = 0; s < nsides; ++s) table[s] = tabulate_facet_basis(space, f, s);

    for (int st = 0; st < nsides; ++st) {    // test side
      for (int su = 0; su < nsides; ++su) {  // trial side
        Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nd, nd);
        for (int q = 0; q < nqf; ++q) {
          const double w = frule.w[q] * fac.length;
          for (int i = 0; i < nd; ++i) {
            const double vt = sign[st] * table[st].val(q, i);  // [v] factor
            const double gnt = avg * (table[st].gx(q, i) * nx + table[st].gy(q, i) * ny);
            for (int j = 0; j < nd; ++j) {
              const double vu = sign[su] * table[su].val(q, j);  // [u] factor
              const double gnu =
                  avg * (table[su].gx(q, j) * nx + table[su].gy(q, j) * ny);
              local(i, j) += w * (-(vt * gnu + vu * gnt) + sig * vt * vu);
            }
          }
        }
        a.add_block(fac.cells[st], fac.cells[su], local);
      }
    }
  }
  return a;
}

std::vector<double> assemble_semilinear(const DGSpace& space, const ProblemSpec& spec,
                                        const DGFunction& u) {
  spec.validate();
  const Mesh& mesh = space.mesh();
  const int nd = space.dofs_per_cell();
  const auto& rule = space.cell_rule();
  const int nq = rule.size();
  std::vector<double> b(space.total_dofs(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = space.cell_map(c);
    const auto cc = u.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd uv = space.cell_values() * uc;
    double* bc = b.data() + static_cast<size_t>(c) * nd;
    for (int q = 0; q < nq; ++q) {
      const double w = rule.w[q] * map.det;
      const double s = w * power_weight(uv(q), spec.p) * uv(q);
      for (int i = 0; i < nd; ++i) bc[i] += s * space.cell_values()(q, i);
    }
  }
  return b;
}

BlockSparseMatrix assemble_jacobian_semilinear(const DGSpace& space,
                                               const ProblemSpec& spec,
                                               const DGFunction& u) {
  spec.validate();
  const Mesh& mesh = space.mesh();
  const int nd = space.dofs_per_cell();
  std::vector<std::pair<int, int>> pattern;
  pattern.reserve(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) pattern.emplace_back(c, c);
  BlockSparseMatrix jac(mesh.num_cells(), nd, std::move(pattern));

  const auto& rule = space.cell_rule();
  const int nq = rule.size();
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = space.cell_map(c);
    const auto cc = u.cell_coeffs(c);
    const Eigen::Map<const Eigen::VectorXd> uc(cc.data(), cc.size());
    const Eigen::VectorXd uv = space.cell_values() * uc;
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nd, nd);
    for (int q = 0; q < nq; ++q) {
      const double w =
          rule.w[q] * map.det * (spec.p - 1.0) * power_weight(uv(q), spec.p);
      local.noalias() +=
          w * (space.cell_values().row(q).transpose() * space.cell_values().row(q));
    }
    jac.add_block(c, c, local);
  }
  return jac;
}

std::vector<double> assemble_load(const DGSpace& space, const ProblemSpec& spec) {
  spec.validate();
  const Mesh& mesh = space.mesh();
  const int nd = space.dofs_per_cell();
  const auto& rule = space.cell_rule();
  const int nq = rule.size();
  std::vector<double> load(space.total_dofs(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const AffineMap& map = space.cell_map(c);
    double* lc = load.data() + static_cast<size_t>(c) * nd;
    for (int q = 0; q < nq; ++q) {
      double xp, yp;
      map.to_physical(rule.x[q], rule.y[q], xp, yp);
      const double s = rule.w[q] * map.det * spec.source(xp, yp);
      for (int i = 0; i < nd; ++i) lc[i] += s * space.cell_values()(q, i);
    }
  }
  return load;
}

std::vector<double> assemble_residual(const BlockSparseMatrix& a,
                                      const DGSpace& space, const ProblemSpec& spec,
                                      const DGFunction& u,
                                      const std::vector<double>& load) {
  std::vector<double> res;
  a.matvec(u.coeffs, res);
  const std::vector<double> b = assemble_semilinear(space, spec, u);
  for (size_t i = 0; i < res.size(); ++i) res[i] += b[i] - load[i];
  return res;
}

}  // namespace semidg
