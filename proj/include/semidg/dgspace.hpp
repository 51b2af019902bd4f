#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "semidg/basis.hpp"
#include "semidg/mesh.hpp"
#include "semidg/quadrature.hpp"

namespace semidg {

// Affine map from the reference triangle onto a physical cell.
struct AffineMap {
  double x0, y0;
  double j00, j01, j10, j11;  // columns v1-v0, v2-v0
  double i00, i01, i10, i11;  // inverse
  double det;                 // = 2 * area

  void to_physical(double xr, double yr, double& xp, double& yp) const {
    xp = x0 + j00 * xr + j01 * yr;
    yp = y0 + j10 * xr + j11 * yr;
  }
  void to_reference(double xp, double yp, double& xr, double& yr) const {
    xr = i00 * (xp - x0) + i01 * (yp - y0);
    yr = i10 * (xp - x0) + i11 * (yp - y0);
  }
  // physical gradient = J^-T * reference gradient
  void grad_to_physical(double gxr, double gyr, double& gx, double& gy) const {
    gx = i00 * gxr + i10 * gyr;
    gy = i01 * gxr + i11 * gyr;
  }
};

// Broken polynomial space of total degree <= k on a mesh, with an
// L2-orthonormal modal basis per cell. The cell quadrature is exact to
// max(2k+2, ceil(k*p)+2) + quad_bump, the facet quadrature to
// 2k+2 + quad_bump; p is the nonlinearity exponent the space will be
// assembled with.
class DGSpace {
 public:
  DGSpace(const Mesh& mesh, int degree, double nonlinearity_p = 2.0, int quad_bump = 0);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int dofs_per_cell() const { return basis_.size(); }
  long total_dofs() const { return static_cast<long>(mesh_->num_cells()) * dofs_per_cell(); }

  const ReferenceBasis& basis() const { return basis_; }
  const TriQuadRule& cell_rule() const { return cell_rule_; }
  const FacetQuadRule& facet_rule() const { return facet_rule_; }
  const AffineMap& cell_map(int c) const { return maps_[c]; }

  // Reference basis tabulated at the cell rule points (#points x #dofs).
  const Eigen::MatrixXd& cell_values() const { return cell_values_; }
  const Eigen::MatrixXd& cell_dx() const { return cell_dx_; }
  const Eigen::MatrixXd& cell_dy() const { return cell_dy_; }

 private:
  const Mesh* mesh_;
  int degree_;
  ReferenceBasis basis_;
  TriQuadRule cell_rule_;
  FacetQuadRule facet_rule_;
  std::vector<AffineMap> maps_;
  Eigen::MatrixXd cell_values_, cell_dx_, cell_dy_;
};

// Coefficient vector over a DGSpace (modal, cell-major layout).
struct DGFunction {
  explicit DGFunction(const DGSpace& s)
      : space(&s), coeffs(static_cast<size_t>(s.total_dofs()), 0.0) {}

  const DGSpace* space;
  std::vector<double> coeffs;

  std::span<const double> cell_coeffs(int c) const {
    return {coeffs.data() + static_cast<size_t>(c) * space->dofs_per_cell(),
            static_cast<size_t>(space->dofs_per_cell())};
  }
  std::span<double> cell_coeffs(int c) {
    return {coeffs.data() + static_cast<size_t>(c) * space->dofs_per_cell(),
            static_cast<size_t>(space->dofs_per_cell())};
  }
};

// Values and physical gradients of f restricted to one cell, at the given
// reference points.
void evaluate(const DGFunction& f, int cell, const std::vector<double>& xr,
              const std::vector<double>& yr, std::vector<double>& values,
              std::vector<std::array<double, 2>>& gradients);

// Cellwise L2 projection of a scalar field onto the space.
DGFunction project_l2(const std::function<double(double, double)>& g,
                      const DGSpace& space);

// Traces of f from both sides of a facet, at the facet quadrature points.
// Boundary facets carry only the "+" side. The physical points are shared by
// both sides, so jumps/averages are pointwise consistent.
struct FacetTrace {
  bool boundary = false;
  std::array<double, 2> normal{0.0, 0.0};  // n+ (outward from the first cell)
  double length = 0.0;
  std::vector<double> x, y;                // physical quadrature points
  std::vector<double> weight;              // physical weights (sum to length)
  std::vector<double> v_plus, v_minus;
  std::vector<std::array<double, 2>> g_plus, g_minus;

  // scalar jump coefficient: [v] = jump_value * n
  double jump_value(int q) const { return boundary ? v_plus[q] : v_plus[q] - v_minus[q]; }
  double average(int q) const {
    return boundary ? v_plus[q] : 0.5 * (v_plus[q] + v_minus[q]);
  }
};

FacetTrace facet_trace(const DGFunction& f, int facet);

// Basis tabulation of one cell at the quadrature points of one of its facets
// (values and physical gradients); side in {0,1} indexes Facet::cells.
struct FacetBasisTable {
  Eigen::MatrixXd val, gx, gy;  // (#facet points x #dofs)
};
FacetBasisTable tabulate_facet_basis(const DGSpace& space, int facet, int side);

// Transfer onto a refined mesh: the restriction of each parent polynomial is
// represented exactly on its children.
DGFunction transfer(const DGFunction& coarse, const DGSpace& fine_space,
                    const std::vector<int>& parent);

// Text dump: header "k nc dofs_per_cell", then one coefficient row per cell.
void write_dgfunction(const DGFunction& f, std::ostream& out);
// Reads a dump onto an existing space (shape must match).
void read_dgfunction(DGFunction& f, std::istream& in);

}  // namespace semidg
