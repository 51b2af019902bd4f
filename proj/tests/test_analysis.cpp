#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "semidg/analysis.hpp"
#include "semidg/harness.hpp"

using namespace semidg;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("energy norm of the exact solution via the error path") {
  // u_h = 0: jumps of the continuous zero-trace u vanish, so the energy
  // error is |grad u| with grad u = pi/sqrt(2) in L2
  const Mesh mesh = build_crisscross(8);
  const DGSpace space(mesh, 1);
  const ProblemSpec spec = smooth_problem(2.0);
  const DGFunction zero(space);
  const ErrorReport rep = error_report(space, zero, spec);
  CHECK(rep.enorm == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(rep.l2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.lp == doctest::Approx(0.5).epsilon(1e-10));        // p = 2
  CHECK(rep.quasinorm == doctest::Approx(0.5).epsilon(1e-10)); // p = 2 weight is 1
}

TEST_CASE("error report totals recombine from the per-cell contributions") {
  const Mesh mesh = build_crisscross(4);
  const DGSpace space(mesh, 1, 4.0);
  const ProblemSpec spec = smooth_problem(4.0);
  const DGFunction uh = project_l2(spec.exact, space);
  const ErrorReport rep = error_report(space, uh, spec);
  double e2 = 0.0, q2 = 0.0, l22 = 0.0, lpp = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    e2 += rep.enorm_cell[c] * rep.enorm_cell[c];
    q2 += rep.quasinorm_cell[c] * rep.quasinorm_cell[c];
    l22 += rep.l2_cell[c] * rep.l2_cell[c];
    lpp += std::pow(rep.lp_cell[c], 4.0);
  }
  CHECK(rep.enorm == doctest::Approx(std::sqrt(e2)).epsilon(1e-12));
  CHECK(rep.quasinorm == doctest::Approx(std::sqrt(q2)).epsilon(1e-12));
  CHECK(rep.l2 == doctest::Approx(std::sqrt(l22)).epsilon(1e-12));
  CHECK(rep.lp == doctest::Approx(std::pow(lpp, 0.25)).epsilon(1e-12));
}

TEST_CASE("smooth functions have no jump contribution") {
  const Mesh mesh = build_crisscross(3);
  const DGSpace space(mesh, 2);
  const ProblemSpec spec = smooth_problem(2.0);
  const MeshSizeField sizes = mesh_size(mesh);
  const auto sigma = penalty_field(space, spec, sizes);
  const DGFunction w =
      reconstruct(project_l2([](double x, double y) { return x * (1 - x) * y; }, space));
  // scaling sigma must not change the norm when jumps vanish
  auto sigma_scaled = sigma;
  for (double& s : sigma_scaled) s *= 100.0;
  CHECK(energy_norm(w, sigma) ==
        doctest::Approx(energy_norm(w, sigma_scaled)).epsilon(1e-12));
}

TEST_CASE("piecewise constant jump across a single facet") {
  const Mesh mesh = Mesh::from_cells({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                     {{{0, 1, 2}}, {{0, 2, 3}}}, {1, 2}, {0, 0});
  const DGSpace space(mesh, 1);
  DGFunction w(space);
  w.cell_coeffs(1)[0] = 1.0 / std::sqrt(2.0);  // 0 on cell 0, 1 on cell 1

  int interior = -1;
  for (int f = 0; f < mesh.num_facets(); ++f)
    if (!mesh.facet(f).boundary) interior = f;
  std::vector<double> sigma(mesh.num_facets(), 0.0);
  const double sig = 7.5;
  sigma[interior] = sig;  // isolate the interior facet contribution
  const double expected = sig * std::sqrt(2.0);  // sigma * facet length * [w]^2
  CHECK(energy_norm(w, sigma) == doctest::Approx(std::sqrt(expected)).epsilon(1e-13));
}

TEST_CASE("quasinorm collapsed cases") {
  const Mesh mesh = build_crisscross(2);
  const DGSpace space(mesh, 2, 4.0);
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DGFunction v(space), w(space), zero(space);
  for (double& c : v.coeffs) c = dist(rng);
  for (double& c : w.coeffs) c = dist(rng);

  // w = 0 collapses the weight to |v|^(p-2)
  for (double p : {2.0, 4.0}) {
    const double qn = quasinorm(v, zero, p);
    const double lp = lp_norm(v, p);
    CHECK(qn * qn == doctest::Approx(std::pow(lp, p)).epsilon(1e-12));
  }
  // p = 2 is the L2 norm whatever w is
  CHECK(quasinorm(v, w, 2.0) == doctest::Approx(lp_norm(v, 2.0)).epsilon(1e-12));
}

TEST_CASE("quasinorm of constants") {
  const Mesh mesh = build_crisscross(1);  // unit area
  const DGSpace space(mesh, 1, 4.0);
  DGFunction one(space);
  for (int c = 0; c < mesh.num_cells(); ++c)
    one.cell_coeffs(c)[0] = 1.0 / std::sqrt(2.0);
  const double qn = quasinorm(one, one, 4.0);
  CHECK(qn * qn == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("reconstruction averages the shared interior node") {
  // with k=2 the diagonal midpoint (0.5, 0.5) is the only interior node
  const Mesh mesh = Mesh::from_cells({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                                     {{{0, 1, 2}}, {{0, 2, 3}}}, {1, 2}, {0, 0});
  const DGSpace space(mesh, 2);
  DGFunction v(space);                          // 0 on cell 0 ...
  v.cell_coeffs(1)[0] = 1.0 / std::sqrt(2.0);   // ... constant 1 on cell 1
  const DGFunction e = reconstruct(v);

  std::vector<double> vals;
  std::vector<std::array<double, 2>> grads;
  // the node (0.5, 0.5) in reference coordinates of cell 0
  const AffineMap& map = space.cell_map(0);
  double xr, yr;
  map.to_reference(0.5, 0.5, xr, yr);
  evaluate(e, 0, {xr}, {yr}, vals, grads);
  CHECK(vals[0] == doctest::Approx(0.5).epsilon(1e-12));

  // boundary trace vanishes
  for (int f = 0; f < mesh.num_facets(); ++f) {
    if (!mesh.facet(f).boundary) continue;
    const FacetTrace tr = facet_trace(e, f);
    for (size_t q = 0; q < tr.weight.size(); ++q)
      CHECK(std::abs(tr.v_plus[q]) < 1e-13);
  }
}

TEST_CASE("reconstruction fixes conforming zero-trace functions") {
  const Mesh mesh = build_crisscross(3);
  for (int k = 1; k <= 3; ++k) {
    const DGSpace space(mesh, k);
    std::mt19937 rng(33 + k);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DGFunction raw(space);
    for (double& c : raw.coeffs) c = dist(rng);
    const DGFunction v = reconstruct(raw);   // conforming, zero trace
    const DGFunction ev = reconstruct(v);
    for (size_t i = 0; i < v.coeffs.size(); ++i)
      CHECK(ev.coeffs[i] == doctest::Approx(v.coeffs[i]).epsilon(1e-12));
  }
}

TEST_CASE("reconstruction is conforming on irregular adapted meshes") {
  std::mt19937 rng(91);
  Mesh mesh = build_crisscross(2);
  for (int step = 0; step < 4; ++step) {
    std::uniform_int_distribution<int> pick(0, mesh.num_cells() - 1);
    mesh = bisect(mesh, {pick(rng), pick(rng), pick(rng)}).mesh;
  }
  REQUIRE(check_mesh(mesh).empty());
  for (int k = 1; k <= 3; ++k) {
    const DGSpace space(mesh, k);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DGFunction v(space);
    for (double& c : v.coeffs) c = dist(rng);
    const DGFunction e = reconstruct(v);
    for (int f = 0; f < mesh.num_facets(); ++f) {
      const FacetTrace tr = facet_trace(e, f);
      for (size_t q = 0; q < tr.weight.size(); ++q) {
        if (mesh.facet(f).boundary) {
          CHECK(std::abs(tr.v_plus[q]) < 1e-12);  // zero trace
        } else {
          CHECK(std::abs(tr.jump_value(static_cast<int>(q))) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("kp stability sample has positive finite ratios") {
  const Mesh mesh = build_crisscross(4);
  const DGSpace space(mesh, 2);
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DGFunction v(space);
  for (double& c : v.coeffs) c = dist(rng);
  const KPStabilitySample s = kp_stability_sample(v);
  CHECK(s.lhs0 > 0.0);
  CHECK(s.lhs1 > 0.0);
  CHECK(s.rhs0 > 0.0);
  CHECK(s.rhs1 > 0.0);
  CHECK(std::isfinite(s.lhs0 / s.rhs0));
  CHECK(std::isfinite(s.lhs1 / s.rhs1));
}
