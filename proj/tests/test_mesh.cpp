#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "semidg/mesh.hpp"

using namespace semidg;

namespace {

// Independent NVB closure oracle: fixpoint over edge keys, then the cell
// count prediction  #cells' = sum_c (1 + #marked edges of c).
int closure_cell_count(const Mesh& mesh, const std::vector<int>& marked) {
  std::set<std::pair<int, int>> edges;
  auto key = [&](int c, int e) {
    auto ends = mesh.edge_vertices(c, e);
    return std::make_pair(std::min(ends[0], ends[1]), std::max(ends[0], ends[1]));
  };
  for (int c : marked) edges.insert(key(c, mesh.refinement_edge(c)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c < mesh.num_cells(); ++c) {
      bool any = false;
      for (int e = 0; e < 3; ++e) any = any || edges.count(key(c, e)) > 0;
      if (any && edges.insert(key(c, mesh.refinement_edge(c))).second) changed = true;
    }
  }
  int total = 0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    int n = 1;
    for (int e = 0; e < 3; ++e)
      if (edges.count(key(c, e))) ++n;
    total += n;
  }
  return total;
}

}  // namespace

TEST_CASE("criss-cross counts") {
  const Mesh m1 = build_crisscross(1);
  CHECK(m1.num_cells() == 4);
  CHECK(m1.num_vertices() == 5);
  CHECK(m1.num_facets() == 8);
  int boundary = 0, interior = 0;
  for (int f = 0; f < m1.num_facets(); ++f)
    (m1.facet(f).boundary ? boundary : interior)++;
  CHECK(boundary == 4);
  CHECK(interior == 4);
  CHECK(m1.total_area() == 1.0);  // partition of the unit square

  const Mesh m2 = build_crisscross(2);
  CHECK(m2.num_cells() == 16);
  CHECK(m2.num_vertices() == 13);
  CHECK(check_mesh(m2).empty());

  CHECK_THROWS_AS(build_crisscross(0), std::invalid_argument);
}

TEST_CASE("criss-cross refinement edges are the long sides") {
  const Mesh m = build_crisscross(2);
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto ends = m.edge_vertices(c, m.refinement_edge(c));
    const Point& p = m.vertex(ends[0]);
    const Point& q = m.vertex(ends[1]);
    CHECK(std::hypot(q.x - p.x, q.y - p.y) == doctest::Approx(0.5));  // subsquare side
  }
}

TEST_CASE("uniform bisection doubles the cell count") {
  const Mesh m = build_crisscross(1);
  std::vector<int> all{0, 1, 2, 3};
  const BisectResult r = bisect(m, all);
  CHECK(r.mesh.num_cells() == 8);
  for (int c = 0; c < 8; ++c) CHECK(r.mesh.generation(c) == 1);
  CHECK(check_mesh(r.mesh).empty());
  CHECK(r.mesh.total_area() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("empty marking returns the mesh unchanged") {
  const Mesh m = build_crisscross(2);
  const BisectResult r = bisect(m, {});
  CHECK(r.mesh.num_cells() == m.num_cells());
  CHECK(r.mesh.num_vertices() == m.num_vertices());
  for (int c = 0; c < m.num_cells(); ++c) {
    CHECK(r.mesh.cell(c) == m.cell(c));
    CHECK(r.parent[c] == c);
  }
}

TEST_CASE("single marked cell: conforming closure") {
  const Mesh m = build_crisscross(1);
  const int oracle = closure_cell_count(m, {0});
  CHECK(oracle == 5);  // boundary refinement edge, no propagation
  const BisectResult r = bisect(m, {0});
  CHECK(r.mesh.num_cells() == oracle);
  CHECK(r.mesh.num_cells() >= 5);
  CHECK(r.mesh.num_cells() <= 8);
  CHECK(check_mesh(r.mesh).empty());
}

TEST_CASE("closure oracle matches over random markings") {
  std::mt19937 rng(777);
  Mesh mesh = build_crisscross(2);
  for (int step = 0; step < 12; ++step) {
    std::uniform_int_distribution<int> pick(0, mesh.num_cells() - 1);
    std::vector<int> marked;
    for (int i = 0; i < 1 + step % 4; ++i) marked.push_back(pick(rng));
    const int oracle = closure_cell_count(mesh, marked);
    BisectResult r = bisect(mesh, marked);
    CHECK(r.mesh.num_cells() == oracle);
    CHECK(check_mesh(r.mesh).empty());
    CHECK(r.mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
    mesh = std::move(r.mesh);
  }
}

TEST_CASE("bisect rejects out-of-range indices") {
  const Mesh m = build_crisscross(1);
  CHECK_THROWS_AS(bisect(m, {4}), std::invalid_argument);
  CHECK_THROWS_AS(bisect(m, {-1}), std::invalid_argument);
}

TEST_CASE("mesh size field") {
  // single unit right triangle: diameter is the hypotenuse
  {
    const Mesh m = Mesh::from_cells({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}}, {0}, {0});
    const MeshSizeField s = mesh_size(m);
    CHECK(s.h_cell[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    for (int f = 0; f < m.num_facets(); ++f)
      CHECK(s.h_facet[f] == s.h_cell[0]);  // boundary rule
  }
  // engineered pair with diameters 0.5 and 0.25 sharing an edge
  {
    const double y2 = std::sqrt(0.25 * 0.25 - 0.1 * 0.1);
    const double y3 = -std::sqrt(0.5 * 0.5 - 0.1 * 0.1);
    const Mesh m = Mesh::from_cells(
        {{0, 0}, {0.2, 0}, {0.1, y2}, {0.1, y3}},
        {{{0, 1, 2}}, {{1, 0, 3}}}, {0, 0}, {0, 0});
    const MeshSizeField s = mesh_size(m);
    CHECK(s.h_cell[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s.h_cell[1] == doctest::Approx(0.5).epsilon(1e-14));
    for (int f = 0; f < m.num_facets(); ++f) {
      if (m.facet(f).boundary) continue;
      CHECK(s.h_facet[f] == doctest::Approx(0.375).epsilon(1e-14));
    }
  }
}

TEST_CASE("interior facet normals point out of the first cell") {
  const Mesh m = build_crisscross(2);
  for (int f = 0; f < m.num_facets(); ++f) {
    const Facet& fac = m.facet(f);
    if (!fac.boundary) CHECK(fac.cells[0] < fac.cells[1]);
    const Point& p = m.vertex(fac.verts[0]);
    const Point& q = m.vertex(fac.verts[1]);
    const Point g = m.cell_centroid(fac.cells[0]);
    const double mx = 0.5 * (p.x + q.x), my = 0.5 * (p.y + q.y);
    CHECK(fac.normal[0] * (g.x - mx) + fac.normal[1] * (g.y - my) < 0.0);
    CHECK(std::hypot(fac.normal[0], fac.normal[1]) == doctest::Approx(1.0));
  }
}

TEST_CASE("shape regularity under repeated uniform bisection") {
  Mesh mesh = build_crisscross(1);
  const double angle0 = mesh.min_angle();
  CHECK(angle0 == doctest::Approx(std::atan(1.0)));  // 45 degrees
  for (int sweep = 0; sweep < 8; ++sweep) {
    std::vector<int> all(mesh.num_cells());
    for (int c = 0; c < mesh.num_cells(); ++c) all[c] = c;
    mesh = bisect(mesh, all).mesh;
    CHECK(mesh.min_angle() >= 0.9 * angle0);
  }
  CHECK(check_mesh(mesh).empty());
  CHECK(mesh.total_area() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mesh text format round trip") {
  Mesh mesh = build_crisscross(2);
  mesh = bisect(mesh, {0, 5, 7}).mesh;
  std::ostringstream out;
  write_mesh(mesh, out);
  std::istringstream in(out.str());
  const Mesh back = read_mesh(in);
  REQUIRE(back.num_vertices() == mesh.num_vertices());
  REQUIRE(back.num_cells() == mesh.num_cells());
  CHECK(back.num_facets() == mesh.num_facets());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    CHECK(back.vertex(v).x == mesh.vertex(v).x);
    CHECK(back.vertex(v).y == mesh.vertex(v).y);
  }
  for (int c = 0; c < mesh.num_cells(); ++c) {
    CHECK(back.cell(c) == mesh.cell(c));
    CHECK(back.refinement_edge(c) == mesh.refinement_edge(c));
    CHECK(back.generation(c) == mesh.generation(c));
  }
  std::istringstream junk("not a mesh");
  CHECK_THROWS(read_mesh(junk));
}

TEST_CASE("checker flags hanging nodes") {
  // the right block splits the shared edge x=1 at (1, 0.5); the left block
  // does not
  const Mesh bad = Mesh::from_cells(
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {1, 0.5}, {2, 0}, {2, 1}},
      {{{0, 1, 2}}, {{0, 2, 3}}, {{1, 5, 4}}, {{5, 6, 4}}, {{6, 2, 4}}},
      {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0});
  CHECK_FALSE(check_mesh(bad).empty());
}
