#pragma once

// Boundary obstacle problem: minimize v^T A v over {v >= bound}, where the
// bound is the trace of a state on the boundary and zero in the interior.
// The minimizer is T(u); fixed points of T are the states with T(u) = u.

#include <optional>
#include <vector>

#include "yo/algebraic.hpp"

namespace yo {

/// Lower obstacle: tr(u) on boundary dofs, 0 on interior dofs.
struct LowerBound {
  Vector values;
};

LowerBound make_bound(const BoundaryStructure& bs, const Vector& u);

struct ObstacleOptions {
  double tol = 1e-10;            ///< relative KKT tolerance
  int max_iterations = 200;      ///< PDAS active-set updates
  int max_sweeps = 200000;       ///< projected SOR fallback sweeps
  double omega = 1.5;            ///< SOR over-relaxation
  double max_pivot_ratio = 1e12; ///< refuse instances worse than this
  std::optional<Vector> warm_start;
};

struct ObstacleSolution {
  Vector state;
  std::vector<Eigen::Index> active_set;
  Vector multipliers;  ///< full length, zero off the active set
  double energy = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool used_fallback = false;
};

/// Relative KKT residual of a candidate: max of primal infeasibility,
/// dual infeasibility, complementarity and stationarity, each scaled.
double kkt_residual(const EnergyForm& form, const LowerBound& bound, const Vector& state,
                    const Vector& multipliers);

/// Primal-dual active set solve; falls back to projected SOR when the
/// active-set sequence revisits a previous set.
ObstacleSolution solve_obstacle(const EnergyForm& form, const LowerBound& bound,
                                const ObstacleOptions& opts = {});

/// T(u): builds the bound from u and warm-starts from u.
ObstacleSolution obstacle_map(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u,
                              ObstacleOptions opts = {});

/// Exhaustive KKT enumeration over all 2^k active sets. Independent of
/// solve_obstacle (dense LDL^T, no iteration). Refuses k > kMaxEnumerated.
inline constexpr Eigen::Index kMaxEnumerated = 14;
ObstacleSolution oracle_enumerate(const EnergyForm& form, const LowerBound& bound);

struct FixedPointCheck {
  bool is_fixed = false;
  double distance = 0.0;  ///< ||T(u) - u||_A / ||u||_A
};

FixedPointCheck is_fixed_point(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u,
                               double tol, const ObstacleOptions& opts = {});

}  // namespace yo
