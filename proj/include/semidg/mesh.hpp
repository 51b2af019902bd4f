#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace semidg {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Edge of the triangulation. verts is sorted ascending; cells lists the
// adjacent cells with the lower index first (the "+" side), -1 for the
// missing side of a boundary facet. The normal is the unit outward normal
// of cells[0].
struct Facet {
  std::array<int, 2> verts{-1, -1};
  std::array<int, 2> cells{-1, -1};
  std::array<int, 2> local_edge{-1, -1};  // local edge index within each cell
  std::array<double, 2> normal{0.0, 0.0};
  double length = 0.0;
  bool boundary = false;
};

// Conforming 2-D triangulation. Cells are positively oriented vertex index
// triples; local edge i is the edge opposite local vertex i. Immutable after
// construction: refinement returns a new mesh.
class Mesh {
 public:
  Mesh() = default;
  static Mesh from_cells(std::vector<Point> vertices,
                         std::vector<std::array<int, 3>> cells,
                         std::vector<int> refinement_edge,
                         std::vector<int> generation);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_facets() const { return static_cast<int>(facets_.size()); }

  const Point& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& cell(int c) const { return cells_[c]; }
  int refinement_edge(int c) const { return refinement_edge_[c]; }
  int generation(int c) const { return generation_[c]; }
  const Facet& facet(int f) const { return facets_[f]; }
  const std::array<int, 3>& cell_facets(int c) const { return cell_facets_[c]; }
  bool vertex_on_boundary(int v) const { return boundary_vertex_[v]; }

  // Endpoints of local edge e of cell c, in the cell's traversal order.
  std::array<int, 2> edge_vertices(int c, int e) const;

  double cell_area(int c) const;
  double cell_diameter(int c) const;
  Point cell_centroid(int c) const;
  double total_area() const;
  double min_angle() const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<int> refinement_edge_;
  std::vector<int> generation_;
  std::vector<Facet> facets_;
  std::vector<std::array<int, 3>> cell_facets_;
  std::vector<char> boundary_vertex_;

  void build_facets();
};

// Unit square [0,1]^2 as an n x n grid of subsquares, each cut into four
// triangles by its diagonals. Refinement edges are assigned by the
// longest-edge rule (ties broken by smallest opposite-vertex index), which
// is bisection-compatible for this mesh.
Mesh build_crisscross(int n);

struct BisectResult {
  Mesh mesh;
  std::vector<int> parent;  // originating cell in the input mesh, per new cell
};

// Newest-vertex bisection of the marked cells plus the conforming closure.
// Every marked cell is bisected at least once.
BisectResult bisect(const Mesh& mesh, const std::vector<int>& marked);

struct MeshSizeField {
  std::vector<double> h_cell;   // cell diameters
  std::vector<double> h_facet;  // mean of adjacent diameters; one-sided on the boundary
};

MeshSizeField mesh_size(const Mesh& mesh);

// Returns an empty string if the mesh is conforming (positive areas, facet
// adjacency consistent, no hanging nodes), else a description of the first
// few violations.
std::string check_mesh(const Mesh& mesh);

// Text format: line 1 "nv nc nf"; nv lines "x y"; nc lines
// "i j k ref_edge gen". Facet connectivity is recomputed on load.
void write_mesh(const Mesh& mesh, std::ostream& out);
Mesh read_mesh(std::istream& in);

}  // namespace semidg
