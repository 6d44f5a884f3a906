#include "yo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace yo {

namespace {

using Edge = std::pair<Eigen::Index, Eigen::Index>;

Edge edge_key(Eigen::Index a, Eigen::Index b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Face sorted_face(Face f) {
  std::sort(f.begin(), f.end());
  return f;
}

double volume_of(const std::vector<Point>& v, const Cell& c) {
  const Point e1 = v[static_cast<std::size_t>(c[1])] - v[static_cast<std::size_t>(c[0])];
  const Point e2 = v[static_cast<std::size_t>(c[2])] - v[static_cast<std::size_t>(c[0])];
  const Point e3 = v[static_cast<std::size_t>(c[3])] - v[static_cast<std::size_t>(c[0])];
  return e1.dot(e2.cross(e3)) / 6.0;
}

SimplicialMesh seed_mesh() {
  std::vector<Point> v = {Point(0, 0, 0),  Point(1, 0, 0),  Point(-1, 0, 0), Point(0, 1, 0),
                          Point(0, -1, 0), Point(0, 0, 1), Point(0, 0, -1)};
  std::vector<Face> faces;
  std::vector<Cell> cells;
  for (Eigen::Index x : {1, 2}) {
    for (Eigen::Index y : {3, 4}) {
      for (Eigen::Index z : {5, 6}) {
        Face f{x, y, z};
        const Point nrm = (v[static_cast<std::size_t>(y)] - v[static_cast<std::size_t>(x)])
                              .cross(v[static_cast<std::size_t>(z)] - v[static_cast<std::size_t>(x)]);
        if (nrm.dot(v[static_cast<std::size_t>(x)]) < 0.0) std::swap(f[1], f[2]);
        faces.push_back(f);
        cells.push_back(Cell{0, f[0], f[1], f[2]});
      }
    }
  }
  return finalize_mesh(std::move(v), std::move(cells), std::move(faces));
}

SimplicialMesh refine(const SimplicialMesh& coarse) {
  std::vector<Point> v = coarse.vertices;
  std::set<Edge> boundary_edges;
  for (const auto& f : coarse.boundary_faces) {
    boundary_edges.insert(edge_key(f[0], f[1]));
    boundary_edges.insert(edge_key(f[1], f[2]));
    boundary_edges.insert(edge_key(f[2], f[0]));
  }

  std::map<Edge, Eigen::Index> midpoint;
  auto mid = [&](Eigen::Index a, Eigen::Index b) {
    const Edge key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Point m = 0.5 * (v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]);
    if (boundary_edges.count(key)) m.normalize();
    const auto idx = static_cast<Eigen::Index>(v.size());
    v.push_back(m);
    midpoint.emplace(key, idx);
    return idx;
  };

  std::vector<Cell> cells;
  cells.reserve(coarse.cells.size() * 8);
  auto push = [&](Cell c) {
    if (volume_of(v, c) < 0.0) std::swap(c[2], c[3]);
    cells.push_back(c);
  };
  for (const auto& c : coarse.cells) {
    const auto [x0, x1, x2, x3] = c;
    const auto m01 = mid(x0, x1), m02 = mid(x0, x2), m03 = mid(x0, x3);
    const auto m12 = mid(x1, x2), m13 = mid(x1, x3), m23 = mid(x2, x3);
    push({x0, m01, m02, m03});
    push({m01, x1, m12, m13});
    push({m02, m12, x2, m23});
    push({m03, m13, m23, x3});

    // Split the inner octahedron along its shortest diagonal. A diagonal
    // joins midpoints of opposite edges (i,j) and (k,l); the remaining
    // midpoints form the cycle m(i,k), m(k,j), m(j,l), m(l,i).
    const std::array<std::array<Eigen::Index, 4>, 3> splits = {
        {{x0, x2, x1, x3}, {x0, x1, x2, x3}, {x0, x3, x1, x2}}};
    std::size_t best = 0;
    double best_len = 0.0;
    for (std::size_t s = 0; s < splits.size(); ++s) {
      const auto [i, j, k, l] = splits[s];
      const double len = (v[static_cast<std::size_t>(mid(i, j))] - v[static_cast<std::size_t>(mid(k, l))]).norm();
      if (s == 0 || len < best_len - 1e-14) {
        best = s;
        best_len = len;
      }
    }
    const auto [i, j, k, l] = splits[best];
    const Eigen::Index d0 = mid(i, j), d1 = mid(k, l);
    const std::array<Eigen::Index, 4> ring = {mid(i, k), mid(k, j), mid(j, l), mid(l, i)};
    for (std::size_t r = 0; r < 4; ++r) push({d0, d1, ring[r], ring[(r + 1) % 4]});
  }

  std::vector<Face> faces;
  faces.reserve(coarse.boundary_faces.size() * 4);
  for (const auto& f : coarse.boundary_faces) {
    const auto a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
    faces.push_back({f[0], a, c});
    faces.push_back({a, f[1], b});
    faces.push_back({c, b, f[2]});
    faces.push_back({a, b, c});
  }
  return finalize_mesh(std::move(v), std::move(cells), std::move(faces));
}

}  // namespace

SimplicialMesh finalize_mesh(std::vector<Point> vertices, std::vector<Cell> cells, std::vector<Face> boundary_faces) {
  const auto nv = static_cast<Eigen::Index>(vertices.size());
  auto in_range = [nv](Eigen::Index i) { return i >= 0 && i < nv; };
  for (const auto& c : cells) {
    for (auto i : c) {
      if (!in_range(i)) throw InputError("cell vertex index out of range");
    }
    if (!(volume_of(vertices, c) > 0.0)) throw InputError("cell with non-positive signed volume");
  }
  for (const auto& f : boundary_faces) {
    for (auto i : f) {
      if (!in_range(i)) throw InputError("boundary face vertex index out of range");
    }
  }

  std::map<Face, int> incidence;
  for (const auto& c : cells) {
    for (int skip = 0; skip < 4; ++skip) {
      Face f{};
      int k = 0;
      for (int j = 0; j < 4; ++j) {
        if (j != skip) f[static_cast<std::size_t>(k++)] = c[static_cast<std::size_t>(j)];
      }
      ++incidence[sorted_face(f)];
    }
  }
  std::set<Face> exposed;
  for (const auto& [f, count] : incidence) {
    if (count == 1) exposed.insert(f);
    if (count > 2) throw InputError("face shared by more than two cells");
  }
  std::set<Face> declared;
  for (const auto& f : boundary_faces) declared.insert(sorted_face(f));
  if (declared != exposed || declared.size() != boundary_faces.size()) {
    throw InputError("boundary_faces do not match the faces incident to exactly one cell");
  }

  std::set<Eigen::Index> bverts;
  for (const auto& f : boundary_faces) bverts.insert(f.begin(), f.end());

  SimplicialMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.cells = std::move(cells);
  mesh.boundary_faces = std::move(boundary_faces);
  mesh.boundary_vertices.assign(bverts.begin(), bverts.end());
  return mesh;
}

SimplicialMesh build_ball_mesh(int level) {
  if (level < 0 || level > kMaxRefinementLevel) throw InputError("refinement level must lie in [0, 6]");
  SimplicialMesh mesh = seed_mesh();
  for (int l = 0; l < level; ++l) mesh = refine(mesh);
  return mesh;
}

double signed_volume(const SimplicialMesh& mesh, const Cell& cell) { return volume_of(mesh.vertices, cell); }

double total_volume(const SimplicialMesh& mesh) {
  double sum = 0.0;
  for (const auto& c : mesh.cells) sum += signed_volume(mesh, c);
  return sum;
}

double boundary_area(const SimplicialMesh& mesh) {
  double sum = 0.0;
  for (const auto& f : mesh.boundary_faces) {
    const Point& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Point& b = mesh.vertices[static_cast<std::size_t>(f[1])];
    const Point& c = mesh.vertices[static_cast<std::size_t>(f[2])];
    sum += 0.5 * (b - a).cross(c - a).norm();
  }
  return sum;
}

double max_edge_length(const SimplicialMesh& mesh) {
  double h = 0.0;
  for (const auto& c : mesh.cells) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        h = std::max(h, (mesh.vertices[static_cast<std::size_t>(c[i])] -
                         mesh.vertices[static_cast<std::size_t>(c[j])]).norm());
      }
    }
  }
  return h;
}

double sphere_deviation(const SimplicialMesh& mesh) {
  double dev = 0.0;
  for (auto i : mesh.boundary_vertices) {
    dev = std::max(dev, std::abs(mesh.vertices[static_cast<std::size_t>(i)].norm() - 1.0));
  }
  return dev;
}

}  // namespace yo
