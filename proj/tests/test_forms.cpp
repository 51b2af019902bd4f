#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "semidg/analysis.hpp"
#include "semidg/basis.hpp"
#include "semidg/forms.hpp"
#include "semidg/harness.hpp"

using namespace semidg;

namespace {

DGFunction constant_function(const DGSpace& space, double c) {
  DGFunction f(space);
  for (int cell = 0; cell < space.mesh().num_cells(); ++cell)
    f.cell_coeffs(cell)[0] = c / std::sqrt(2.0);
  return f;
}

DGFunction random_function(const DGSpace& space, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DGFunction f(space);
  for (double& c : f.coeffs) c = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("penalty field formula") {
  const Mesh mesh = build_crisscross(2);
  {
    const DGSpace space(mesh, 1);
    ProblemSpec spec = smooth_problem(2.0, 10.0);
    MeshSizeField sizes = mesh_size(mesh);
    sizes.h_facet.assign(sizes.h_facet.size(), 0.5);
    const auto sigma = penalty_field(space, spec, sizes);
    for (double s : sigma) CHECK(s == doctest::Approx(20.0).epsilon(1e-14));
  }
  {
    const DGSpace space(mesh, 2);
    ProblemSpec spec = smooth_problem(2.0, 10.0);
    MeshSizeField sizes = mesh_size(mesh);
    sizes.h_facet.assign(sizes.h_facet.size(), 0.25);
    const auto sigma = penalty_field(space, spec, sizes);
    for (double s : sigma) CHECK(s == doctest::Approx(160.0).epsilon(1e-14));

    // halving h doubles sigma
    MeshSizeField halved = sizes;
    for (double& h : halved.h_facet) h *= 0.5;
    const auto sigma2 = penalty_field(space, spec, halved);
    for (size_t f = 0; f < sigma.size(); ++f)
      CHECK(sigma2[f] == doctest::Approx(2.0 * sigma[f]).epsilon(1e-14));
  }
}

TEST_CASE("P1 volume stiffness on the unit right triangle") {
  // analytic stiffness for the hat functions at (0,0), (1,0), (0,1)
  const double expected[3][3] = {
      {1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};

  const Mesh mesh = Mesh::from_cells({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}}, {0}, {0});
  const DGSpace space(mesh, 1);
  const AffineMap& map = space.cell_map(0);

  // modal stiffness from the (constant) reference gradients of the basis
  Eigen::MatrixXd gx, gy;
  space.basis().gradients({1.0 / 3}, {1.0 / 3}, gx, gy);
  Eigen::MatrixXd kmodal(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double gix, giy, gjx, gjy;
      map.grad_to_physical(gx(0, i), gy(0, i), gix, giy);
      map.grad_to_physical(gx(0, j), gy(0, j), gjx, gjy);
      kmodal(i, j) = 0.5 * map.det * (gix * gjx + giy * gjy);
    }

  // change of basis to the vertex (hat) functions
  const LagrangeNodes ln = lagrange_nodes(space.basis());
  // for k=1 the Lagrange nodes are the vertices in order
  REQUIRE(ln.nodes.size() == 3);
  const Eigen::MatrixXd kvertex =
      ln.nodal_to_modal.transpose() * kmodal * ln.nodal_to_modal;
  // hat_i has modal coefficients nodal_to_modal * e_i; with nodes ordered
  // (0,0), (1,0), (0,1) the matrix rows follow the vertex order
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(kvertex(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-12));
}

TEST_CASE("bilinear form on a constant matches the boundary-term oracle") {
  // two-cell mesh: only boundary facet terms survive for constant u
  const Mesh mesh = Mesh::from_cells({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                     {{{0, 1, 2}}, {{0, 2, 3}}}, {1, 2}, {0, 0});
  const DGSpace space(mesh, 2);
  ProblemSpec spec = smooth_problem(2.0);
  const MeshSizeField sizes = mesh_size(mesh);
  const auto sigma = penalty_field(space, spec, sizes);
  const BlockSparseMatrix a = assemble_bilinear(space, spec, sigma);

  const double c = 2.0;
  const DGFunction cf = constant_function(space, c);
  std::vector<double> ac;
  a.matvec(cf.coeffs, ac);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const DGFunction v = random_function(space, rng);
    double lhs = 0.0;
    for (size_t i = 0; i < ac.size(); ++i) lhs += ac[i] * v.coeffs[i];

    // direct quadrature of -c dv/dn + sigma c v over the boundary
    double rhs = 0.0;
    for (int f = 0; f < mesh.num_facets(); ++f) {
      if (!mesh.facet(f).boundary) continue;
      const FacetTrace tr = facet_trace(v, f);
      for (size_t q = 0; q < tr.weight.size(); ++q) {
        const double dvdn = tr.g_plus[q][0] * tr.normal[0] + tr.g_plus[q][1] * tr.normal[1];
        rhs += tr.weight[q] * (-c * dvdn + sigma[f] * c * tr.v_plus[q]);
      }
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));

    // zero-trace test functions do not see the penalty part
    const DGFunction vz = reconstruct(v);
    double lhs_z = 0.0;
    for (size_t i = 0; i < ac.size(); ++i) lhs_z += ac[i] * vz.coeffs[i];
    double rhs_z = 0.0;
    for (int f = 0; f < mesh.num_facets(); ++f) {
      if (!mesh.facet(f).boundary) continue;
      const FacetTrace tr = facet_trace(vz, f);
      for (size_t q = 0; q < tr.weight.size(); ++q) {
        const double dvdn = tr.g_plus[q][0] * tr.normal[0] + tr.g_plus[q][1] * tr.normal[1];
        rhs_z += tr.weight[q] * (-c * dvdn);
      }
    }
    CHECK(lhs_z == doctest::Approx(rhs_z).epsilon(1e-11));
  }
}

TEST_CASE("bilinear form is symmetric") {
  const Mesh mesh = build_crisscross(3);
  for (int k = 1; k <= 2; ++k) {
    const DGSpace space(mesh, k);
    ProblemSpec spec = smooth_problem(2.0);
    const MeshSizeField sizes = mesh_size(mesh);
    const BlockSparseMatrix a =
        assemble_bilinear(space, spec, penalty_field(space, spec, sizes));
    CHECK(a.max_asymmetry() <= 1e-10 * a.max_abs());
  }
}

TEST_CASE("semilinear vector at p=2 is the mass matrix action") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 2);
  ProblemSpec spec = smooth_problem(2.0);
  std::mt19937 rng(7);
  const DGFunction u = random_function(space, rng);
  const auto b = assemble_semilinear(space, spec, u);
  // orthonormal reference basis: cell mass is det * identity
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const double det = space.cell_map(c).det;
    const auto cc = u.cell_coeffs(c);
    for (int i = 0; i < space.dofs_per_cell(); ++i)
      CHECK(b[c * space.dofs_per_cell() + i] ==
            doctest::Approx(det * cc[i]).epsilon(1e-12));
  }
}

TEST_CASE("semilinear vector for a constant against the p=4 formula") {
  const Mesh mesh = build_crisscross(1);  // unit area
  const DGSpace space(mesh, 1, 4.0);
  ProblemSpec spec = smooth_problem(4.0);
  const double c = 1.7;
  const DGFunction u = constant_function(space, c);
  const DGFunction one = constant_function(space, 1.0);
  const auto b = assemble_semilinear(space, spec, u);
  double pairing = 0.0;
  for (size_t i = 0; i < b.size(); ++i) pairing += b[i] * one.coeffs[i];
  CHECK(pairing == doctest::Approx(c * c * c).epsilon(1e-13));
}

TEST_CASE("semilinear vector is odd in its argument") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 2, 5.0);
  ProblemSpec spec = smooth_problem(5.0);
  std::mt19937 rng(9);
  const DGFunction u = random_function(space, rng);
  DGFunction neg(space);
  for (size_t i = 0; i < u.coeffs.size(); ++i) neg.coeffs[i] = -u.coeffs[i];
  const auto bu = assemble_semilinear(space, spec, u);
  const auto bn = assemble_semilinear(space, spec, neg);
  for (size_t i = 0; i < bu.size(); ++i) CHECK(bn[i] == -bu[i]);
}

TEST_CASE("semilinear Jacobian special cases") {
  const Mesh mesh = build_crisscross(2);
  std::mt19937 rng(13);
  {
    const DGSpace space(mesh, 2);
    ProblemSpec spec = smooth_problem(2.0);
    const DGFunction u = random_function(space, rng);
    const BlockSparseMatrix jac = assemble_jacobian_semilinear(space, spec, u);
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const double* blk = jac.block(c, c);
      const double det = space.cell_map(c).det;
      const int nd = space.dofs_per_cell();
      for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) {
          const double expect = (i == j) ? det : 0.0;
          CHECK(blk[i * nd + j] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
  }
  {
    const DGSpace space(mesh, 2, 4.0);
    ProblemSpec spec = smooth_problem(4.0);
    const DGFunction zero(space);
    const BlockSparseMatrix jac = assemble_jacobian_semilinear(space, spec, zero);
    CHECK(jac.max_abs() == 0.0);
  }
}

TEST_CASE("residual special cases") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 1);
  ProblemSpec spec = smooth_problem(2.0);
  spec.source = [](double, double) { return 0.0; };
  const MeshSizeField sizes = mesh_size(mesh);
  const BlockSparseMatrix a =
      assemble_bilinear(space, spec, penalty_field(space, spec, sizes));
  const auto load = assemble_load(space, spec);
  const DGFunction zero(space);
  const auto f = assemble_residual(a, space, spec, zero, load);
  for (double v : f) CHECK(v == 0.0);
}

TEST_CASE("residual is affine for p=2") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 2);
  ProblemSpec spec = smooth_problem(2.0);
  const MeshSizeField sizes = mesh_size(mesh);
  const BlockSparseMatrix a =
      assemble_bilinear(space, spec, penalty_field(space, spec, sizes));
  const auto load = assemble_load(space, spec);
  std::mt19937 rng(17);
  const DGFunction u1 = random_function(space, rng);
  const DGFunction u2 = random_function(space, rng);
  DGFunction sum(space);
  for (size_t i = 0; i < sum.coeffs.size(); ++i)
    sum.coeffs[i] = u1.coeffs[i] + u2.coeffs[i];
  const DGFunction zero(space);
  const auto f1 = assemble_residual(a, space, spec, u1, load);
  const auto f2 = assemble_residual(a, space, spec, u2, load);
  const auto fs = assemble_residual(a, space, spec, sum, load);
  const auto f0 = assemble_residual(a, space, spec, zero, load);
  double scale = 0.0;
  for (double v : f1) scale = std::max(scale, std::abs(v));
  for (size_t i = 0; i < fs.size(); ++i)
    CHECK(std::abs(fs[i] - f1[i] - f2[i] + f0[i]) <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("problem spec validation") {
  ProblemSpec spec = smooth_problem(4.0);
  spec.p = 1.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.p = 4.0;
  spec.c_sigma = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
