#pragma once

// Tetrahedral meshes of the unit ball and P1 assembly of the conformal
// Laplacian / Robin pairing on them.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "yo/algebraic.hpp"
#include "yo/functionals.hpp"

namespace yo {

using Point = Eigen::Vector3d;
using Cell = std::array<Eigen::Index, 4>;
using Face = std::array<Eigen::Index, 3>;

struct SimplicialMesh {
  std::vector<Point> vertices;
  std::vector<Cell> cells;
  std::vector<Face> boundary_faces;
  std::vector<Eigen::Index> boundary_vertices;  ///< sorted, derived from boundary_faces

  Eigen::Index vertex_count() const { return static_cast<Eigen::Index>(vertices.size()); }
};

/// Seed mesh: octahedron with a center vertex, 7 vertices and 8 cells.
inline constexpr std::size_t kSeedVertexCount = 7;
inline constexpr std::size_t kSeedCellCount = 8;
inline constexpr int kMaxRefinementLevel = 6;

/// Seed refined `level` times by 1:8 red refinement; new boundary vertices
/// are projected radially onto the unit sphere.
SimplicialMesh build_ball_mesh(int level);

/// Fills boundary_vertices from boundary_faces and validates: indices in
/// range, positive cell volumes, and boundary_faces equal to the set of
/// faces incident to exactly one cell. Throws InputError on failure.
SimplicialMesh finalize_mesh(std::vector<Point> vertices, std::vector<Cell> cells, std::vector<Face> boundary_faces);

double signed_volume(const SimplicialMesh& mesh, const Cell& cell);
double total_volume(const SimplicialMesh& mesh);
double boundary_area(const SimplicialMesh& mesh);
double max_edge_length(const SimplicialMesh& mesh);
/// Largest | ||x|| - 1 | over boundary vertices.
double sphere_deviation(const SimplicialMesh& mesh);

/// Curvature data attached to the mesh.
struct MetricData {
  Vector R_field;  ///< scalar curvature per vertex
  Vector H_field;  ///< mean curvature per boundary vertex, in boundary_vertices order
  std::optional<PositiveField> conformal_w;

  /// Flat unit ball: R = 0, H = 1.
  static MetricData flat_ball(const SimplicialMesh& mesh);
};

struct AssembledProblem {
  EnergyForm form;
  BoundaryStructure boundary;
};

/// a_n * stiffness + lumped R mass + lumped b_n H boundary mass. With a
/// conformal factor the form is pulled back and boundary weights carry w^{2#}.
AssembledProblem assemble(const SimplicialMesh& mesh, const MetricData& metric, int n = 3);

struct CurvatureResidual {
  double r_interior = 0.0;  ///< ||(A u)_interior|| / ||A u||
  double r_boundary = 0.0;  ///< relative misfit of the boundary fit
  double c_est = 0.0;       ///< fitted c in (A u)_j ~ c m_j u_j^{n/(n-2)}
};

CurvatureResidual curvature_residual(const SimplicialMesh& mesh, const EnergyForm& form,
                                     const BoundaryStructure& bs, const Vector& u);

}  // namespace yo
