#include "semidg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace semidg {

namespace {

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

inline double tri_signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

// Local edge i is opposite local vertex i.
constexpr int kEdgeEnds[3][2] = {{1, 2}, {2, 0}, {0, 1}};

}  // namespace

std::array<int, 2> Mesh::edge_vertices(int c, int e) const {
  const auto& v = cells_[c];
  return {v[kEdgeEnds[e][0]], v[kEdgeEnds[e][1]]};
}

double Mesh::cell_area(int c) const {
  const auto& v = cells_[c];
  return tri_signed_area(vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]);
}

double Mesh::cell_diameter(int c) const {
  double h = 0.0;
  for (int e = 0; e < 3; ++e) {
    const auto ends = edge_vertices(c, e);
    const Point& p = vertices_[ends[0]];
    const Point& q = vertices_[ends[1]];
    h = std::max(h, std::hypot(q.x - p.x, q.y - p.y));
  }
  return h;
}

Point Mesh::cell_centroid(int c) const {
  const auto& v = cells_[c];
  return {(vertices_[v[0]].x + vertices_[v[1]].x + vertices_[v[2]].x) / 3.0,
          (vertices_[v[0]].y + vertices_[v[1]].y + vertices_[v[2]].y) / 3.0};
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int c = 0; c < num_cells(); ++c) a += cell_area(c);
  return a;
}

double Mesh::min_angle() const {
  double amin = std::numeric_limits<double>::max();
  for (int c = 0; c < num_cells(); ++c) {
    const auto& v = cells_[c];
    for (int i = 0; i < 3; ++i) {
      const Point& o = vertices_[v[i]];
      const Point& p = vertices_[v[(i + 1) % 3]];
      const Point& q = vertices_[v[(i + 2) % 3]];
      const double ux = p.x - o.x, uy = p.y - o.y;
      const double vx = q.x - o.x, vy = q.y - o.y;
      const double dot = ux * vx + uy * vy;
      const double cr = ux * vy - uy * vx;
      amin = std::min(amin, std::atan2(std::abs(cr), dot));
    }
  }
  return amin;
}

void Mesh::build_facets() {
  facets_.clear();
  cell_facets_.assign(cells_.size(), {-1, -1, -1});
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(3 * cells_.size());

  for (int c = 0; c < num_cells(); ++c) {
    for (int e = 0; e < 3; ++e) {
      const auto ends = edge_vertices(c, e);
      const auto key = edge_key(ends[0], ends[1]);
      auto it = index.find(key);
      if (it == index.end()) {
        Facet f;
        f.verts = {std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
        f.cells = {c, -1};
        f.local_edge = {e, -1};
        index.emplace(key, static_cast<int>(facets_.size()));
        cell_facets_[c][e] = static_cast<int>(facets_.size());
        facets_.push_back(f);
      } else {
        Facet& f = facets_[it->second];
        if (f.cells[1] != -1)
          throw std::runtime_error("mesh: edge shared by more than two cells");
        f.cells[1] = c;
        f.local_edge[1] = e;
        cell_facets_[c][e] = it->second;
      }
    }
  }

  boundary_vertex_.assign(vertices_.size(), 0);
  for (Facet& f : facets_) {
    f.boundary = (f.cells[1] == -1);
    if (!f.boundary && f.cells[0] > f.cells[1]) {
      std::swap(f.cells[0], f.cells[1]);
      std::swap(f.local_edge[0], f.local_edge[1]);
    }
    const Point& p = vertices_[f.verts[0]];
    const Point& q = vertices_[f.verts[1]];
    const double dx = q.x - p.x, dy = q.y - p.y;
    f.length = std::hypot(dx, dy);
    // unit normal, oriented outward from cells[0]
    double nx = dy / f.length, ny = -dx / f.length;
    const Point g = cell_centroid(f.cells[0]);
    const double mx = 0.5 * (p.x + q.x), my = 0.5 * (p.y + q.y);
    if (nx * (g.x - mx) + ny * (g.y - my) > 0.0) {
      nx = -nx;
      ny = -ny;
    }
    f.normal = {nx, ny};
    if (f.boundary) {
      boundary_vertex_[f.verts[0]] = 1;
      boundary_vertex_[f.verts[1]] = 1;
    }
  }
}

Mesh Mesh::from_cells(std::vector<Point> vertices, std::vector<std::array<int, 3>> cells,
                      std::vector<int> refinement_edge, std::vector<int> generation) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.cells_ = std::move(cells);
  m.refinement_edge_ = std::move(refinement_edge);
  m.generation_ = std::move(generation);
  if (m.refinement_edge_.size() != m.cells_.size() ||
      m.generation_.size() != m.cells_.size())
    throw std::invalid_argument("mesh: per-cell array size mismatch");
  for (int c = 0; c < m.num_cells(); ++c) {
    for (int i : m.cells_[c])
      if (i < 0 || i >= m.num_vertices())
        throw std::invalid_argument("mesh: vertex index out of range");
    if (m.refinement_edge_[c] < 0 || m.refinement_edge_[c] > 2)
      throw std::invalid_argument("mesh: refinement edge out of range");
    if (m.cell_area(c) <= 0.0)
      throw std::invalid_argument("mesh: nonpositive cell area");
  }
  m.build_facets();
  return m;
}

namespace {

int longest_edge(const std::vector<Point>& verts, const std::array<int, 3>& cell) {
  int best = 0;
  double best_len = -1.0;
  for (int e = 0; e < 3; ++e) {
    const Point& p = verts[cell[kEdgeEnds[e][0]]];
    const Point& q = verts[cell[kEdgeEnds[e][1]]];
    const double len = std::hypot(q.x - p.x, q.y - p.y);
    // strict improvement only: ties go to the smallest opposite-vertex index
    if (len > best_len * (1.0 + 1e-12)) {
      best = e;
      best_len = len;
    }
  }
  return best;
}

}  // namespace

Mesh build_crisscross(int n) {
  if (n < 1) throw std::invalid_argument("build_crisscross: n must be >= 1");
  std::vector<Point> verts;
  verts.reserve(static_cast<size_t>(n + 1) * (n + 1) + static_cast<size_t>(n) * n);
  const double h = 1.0 / n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) verts.push_back({i * h, j * h});
  const int center0 = (n + 1) * (n + 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) verts.push_back({(i + 0.5) * h, (j + 0.5) * h});

  auto corner = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(static_cast<size_t>(4) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int c00 = corner(i, j), c10 = corner(i + 1, j);
      const int c11 = corner(i + 1, j + 1), c01 = corner(i, j + 1);
      const int ct = center0 + j * n + i;
      cells.push_back({c00, c10, ct});
      cells.push_back({c10, c11, ct});
      cells.push_back({c11, c01, ct});
      cells.push_back({c01, c00, ct});
    }
  }

  std::vector<int> ref(cells.size());
  for (size_t c = 0; c < cells.size(); ++c) ref[c] = longest_edge(verts, cells[c]);
  std::vector<int> gen(cells.size(), 0);
  return Mesh::from_cells(std::move(verts), std::move(cells), std::move(ref),
                          std::move(gen));
}

BisectResult bisect(const Mesh& mesh, const std::vector<int>& marked) {
  for (int c : marked)
    if (c < 0 || c >= mesh.num_cells())
      throw std::invalid_argument("bisect: cell index out of range");

  std::vector<int> identity(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) identity[c] = c;
  if (marked.empty()) return {mesh, std::move(identity)};

  // Edges to be split: refinement edges of the marked cells, closed so that
  // any cell with a split edge also splits its own refinement edge.
  std::vector<char> edge_marked(mesh.num_facets(), 0);
  std::vector<int> work;
  auto mark_edge = [&](int f) {
    if (!edge_marked[f]) {
      edge_marked[f] = 1;
      const Facet& fac = mesh.facet(f);
      work.push_back(fac.cells[0]);
      if (fac.cells[1] >= 0) work.push_back(fac.cells[1]);
    }
  };
  for (int c : marked) mark_edge(mesh.cell_facets(c)[mesh.refinement_edge(c)]);
  while (!work.empty()) {
    const int c = work.back();
    work.pop_back();
    const int fref = mesh.cell_facets(c)[mesh.refinement_edge(c)];
    if (edge_marked[fref]) continue;
    bool any = false;
    for (int e = 0; e < 3; ++e) any = any || edge_marked[mesh.cell_facets(c)[e]];
    if (any) mark_edge(fref);
  }

  std::vector<Point> verts(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) verts[v] = mesh.vertex(v);
  std::vector<int> midpoint(mesh.num_facets(), -1);
  for (int f = 0; f < mesh.num_facets(); ++f) {
    if (!edge_marked[f]) continue;
    const Facet& fac = mesh.facet(f);
    const Point& p = mesh.vertex(fac.verts[0]);
    const Point& q = mesh.vertex(fac.verts[1]);
    midpoint[f] = static_cast<int>(verts.size());
    verts.push_back({0.5 * (p.x + q.x), 0.5 * (p.y + q.y)});
  }

  std::vector<std::array<int, 3>> cells;
  std::vector<int> ref, gen, parent;
  cells.reserve(mesh.num_cells() * 2);
  auto emit = [&](std::array<int, 3> v, int re, int g, int par) {
    cells.push_back(v);
    ref.push_back(re);
    gen.push_back(g);
    parent.push_back(par);
  };

  // Rotate so the refinement edge joins the first two vertices (cyclic, so
  // orientation is preserved); the apex comes last.
  auto rotated = [](const std::array<int, 3>& v, int re) -> std::array<int, 3> {
    switch (re) {
      case 0: return {v[1], v[2], v[0]};
      case 1: return {v[2], v[0], v[1]};
      default: return {v[0], v[1], v[2]};
    }
  };

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const int re = mesh.refinement_edge(c);
    const int fref = mesh.cell_facets(c)[re];
    if (!edge_marked[fref]) {
      emit(mesh.cell(c), re, mesh.generation(c), c);
      continue;
    }
    const auto v = rotated(mesh.cell(c), re);
    const int m = midpoint[fref];
    const int g = mesh.generation(c);
    // Children (v0,m,apex) and (m,v1,apex); the midpoint is the newest
    // vertex, so each child's refinement edge is the one opposite it. A
    // child is split again when that edge (an original edge of the parent)
    // is itself marked.
    struct Child {
      std::array<int, 3> v;
      int re;
      int old_edge;  // facet id of the child's refinement edge in the input mesh
    };
    const int e_left = mesh.cell_facets(c)[(re + 2) % 3];   // edge {v0, v2} after rotation
    const int e_right = mesh.cell_facets(c)[(re + 1) % 3];  // edge {v1, v2} after rotation
    const Child children[2] = {
        {{v[0], m, v[2]}, 1, e_left},
        {{m, v[1], v[2]}, 0, e_right},
    };
    for (const Child& ch : children) {
      if (ch.old_edge >= 0 && edge_marked[ch.old_edge]) {
        const auto w = rotated(ch.v, ch.re);
        const int m2 = midpoint[ch.old_edge];
        emit({w[0], m2, w[2]}, 1, g + 2, c);
        emit({m2, w[1], w[2]}, 0, g + 2, c);
      } else {
        emit(ch.v, ch.re, g + 1, c);
      }
    }
  }

  BisectResult out;
  out.mesh = Mesh::from_cells(std::move(verts), std::move(cells), std::move(ref),
                              std::move(gen));
  out.parent = std::move(parent);
  return out;
}

MeshSizeField mesh_size(const Mesh& mesh) {
  MeshSizeField s;
  s.h_cell.resize(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) s.h_cell[c] = mesh.cell_diameter(c);
  s.h_facet.resize(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& fac = mesh.facet(f);
    if (fac.boundary)
      s.h_facet[f] = s.h_cell[fac.cells[0]];
    else
      s.h_facet[f] = 0.5 * (s.h_cell[fac.cells[0]] + s.h_cell[fac.cells[1]]);
  }
  return s;
}

std::string check_mesh(const Mesh& mesh) {
  std::ostringstream bad;
  int count = 0;
  auto complain = [&](const std::string& msg) {
    if (count < 8) bad << msg << "\n";
    ++count;
  };

  for (int c = 0; c < mesh.num_cells(); ++c)
    if (!(mesh.cell_area(c) > 0.0))
      complain("cell " + std::to_string(c) + " has nonpositive area");

  // Hash of vertex positions. NVB only ever inserts edge midpoints, so a
  // hanging node must coincide with the midpoint of an unbroken facet.
  std::map<std::pair<long long, long long>, int> pos;
  auto quantize = [](double v) {
    return static_cast<long long>(std::llround(v * 1e12));
  };
  for (int v = 0; v < mesh.num_vertices(); ++v)
    pos[{quantize(mesh.vertex(v).x), quantize(mesh.vertex(v).y)}] = v;

  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& fac = mesh.facet(f);
    if (fac.verts[0] == fac.verts[1]) complain("degenerate facet " + std::to_string(f));
    if (fac.cells[0] < 0) complain("facet " + std::to_string(f) + " has no cell");
    if (fac.boundary != (fac.cells[1] < 0))
      complain("facet " + std::to_string(f) + " boundary flag inconsistent");
    const Point& p = mesh.vertex(fac.verts[0]);
    const Point& q = mesh.vertex(fac.verts[1]);
    auto hit = pos.find({quantize(0.5 * (p.x + q.x)), quantize(0.5 * (p.y + q.y))});
    if (hit != pos.end())
      complain("hanging node " + std::to_string(hit->second) + " on facet " +
               std::to_string(f));
    // stored normal must point out of the first adjacent cell
    const Point g = mesh.cell_centroid(fac.cells[0]);
    const double mx = 0.5 * (p.x + q.x), my = 0.5 * (p.y + q.y);
    if (fac.normal[0] * (g.x - mx) + fac.normal[1] * (g.y - my) >= 0.0)
      complain("facet " + std::to_string(f) + " normal not outward from first cell");
    const double nrm = std::hypot(fac.normal[0], fac.normal[1]);
    if (std::abs(nrm - 1.0) > 1e-12)
      complain("facet " + std::to_string(f) + " normal not unit");
  }

  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int e = 0; e < 3; ++e) {
      const int f = mesh.cell_facets(c)[e];
      if (f < 0) {
        complain("cell " + std::to_string(c) + " missing facet");
        continue;
      }
      const Facet& fac = mesh.facet(f);
      if (fac.cells[0] != c && fac.cells[1] != c)
        complain("cell/facet adjacency mismatch at cell " + std::to_string(c));
    }
  }

  if (count > 8) bad << "... (" << count << " violations total)\n";
  return bad.str();
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out.precision(17);
  out << mesh.num_vertices() << " " << mesh.num_cells() << " " << mesh.num_facets()
      << "\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << mesh.vertex(v).x << " " << mesh.vertex(v).y << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& t = mesh.cell(c);
    out << t[0] << " " << t[1] << " " << t[2] << " " << mesh.refinement_edge(c) << " "
        << mesh.generation(c) << "\n";
  }
}

Mesh read_mesh(std::istream& in) {
  int nv = 0, nc = 0, nf = 0;
  if (!(in >> nv >> nc >> nf)) throw std::runtime_error("mesh read: bad header");
  if (nv < 3 || nc < 1) throw std::runtime_error("mesh read: empty mesh");
  std::vector<Point> verts(nv);
  for (int v = 0; v < nv; ++v)
    if (!(in >> verts[v].x >> verts[v].y))
      throw std::runtime_error("mesh read: bad vertex line");
  std::vector<std::array<int, 3>> cells(nc);
  std::vector<int> ref(nc), gen(nc);
  for (int c = 0; c < nc; ++c)
    if (!(in >> cells[c][0] >> cells[c][1] >> cells[c][2] >> ref[c] >> gen[c]))
      throw std::runtime_error("mesh read: bad cell line");
  Mesh m = Mesh::from_cells(std::move(verts), std::move(cells), std::move(ref),
                            std::move(gen));
  if (m.num_facets() != nf)
    throw std::runtime_error("mesh read: facet count mismatch");
  return m;
}

}  // namespace semidg
