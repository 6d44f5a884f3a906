#pragma once

// Harmonic extremals on the flat unit ball and the sharp trace constant.
//
//   u_a(x) = scale * ((|a|^2 - 1) / |x - a|^2)^{(n-2)/2},   |a| > 1
//
// is harmonic in the ball. For n = 3 it satisfies 8 d_nu u + 4 u = 4 scale^{-2} u^3
// on the unit sphere, i.e. zero scalar curvature and constant mean curvature.

#include "yo/algebraic.hpp"
#include "yo/mesh.hpp"
#include "yo/obstacle.hpp"

namespace yo {

struct BubbleParams {
  Point pole = Point(0, 0, 2);
  double scale = 1.0;

  /// Throws DomainError unless |pole| >= 1 + 1e-6 and scale > 0.
  void validate() const;
};

double bubble_value(const Point& x, const BubbleParams& params, int n = 3);

PositiveField bubble_field(const SimplicialMesh& mesh, const BubbleParams& params, int n = 3);

/// Continuum boundary constant c with B u = c u^{n/(n-2)} for the bubble
/// (4 scale^{-2} when n = 3).
double bubble_constant(const BubbleParams& params, int n = 3);

struct BubbleReport {
  CurvatureResidual residual;
  double c_expected = 0.0;
  double fixed_point_distance = 0.0;
  double E_value = 0.0;
  double I_value = 0.0;
};

BubbleReport verify_bubble(const SimplicialMesh& mesh, const EnergyForm& form, const BoundaryStructure& bs,
                           const BubbleParams& params, const ObstacleOptions& opts = {});

/// (n-1)-volume of the unit sphere S^{n-1}.
double unit_sphere_area(int n);

/// 2(n-1) sigma^{1/(n-1)}; sharp_constant(n) uses sigma = |S^{n-1}|.
double sharp_constant_for_area(int n, double sigma);
double sharp_constant(int n);

/// sqrt(mu) ||T(u)||_{2#} / ||u||_A. At most 1 by the obstacle trace
/// inequality; equal to 1 exactly at extremals.
double obstacle_trace_ratio(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double mu,
                            const ObstacleOptions& opts = {});

}  // namespace yo
