#pragma once

// Quotient functionals on the positive cone and the T-projected minimizing
// sequence driver.
//
//   E_p(u) = <u,u> / ||u||^2_{p+1}          (energy quotient)
//   I_p(u) = <u,u> / ||T(u)||^2_{p+1}       (control quotient)
//
// Boundary norms are taken with the conformal weight w^{2#} when a factor
// is supplied, so a pulled-back form paired with its factor evaluates the
// quotient of the conformal metric.

#include <optional>
#include <string>
#include <vector>

#include "yo/algebraic.hpp"
#include "yo/obstacle.hpp"

namespace yo {

using OptionalFactor = std::optional<PositiveField>;

/// p must lie in [1, 2# - 1].
void require_exponent(const BoundaryStructure& bs, double p);

double energy_quotient(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                       const OptionalFactor& w = std::nullopt);

double control_quotient(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                        const ObstacleOptions& opts = {}, const OptionalFactor& w = std::nullopt);

struct Deficit {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = E_p(u) - E_p(T u),  rhs = (<u,u> - <Tu,Tu>) / ||Tu||^2_{p+1}.  lhs >= rhs >= 0.
Deficit deficit_E(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                  const ObstacleOptions& opts = {}, const OptionalFactor& w = std::nullopt);

/// lhs = I_p(u) - I_p(T u), rhs as above. Equal up to solver error.
Deficit deficit_I(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                  const ObstacleOptions& opts = {}, const OptionalFactor& w = std::nullopt);

/// |E_p(T u) - I_p(T u)|.
double composed_equality_check(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                               const ObstacleOptions& opts = {}, const OptionalFactor& w = std::nullopt);

/// Analytic gradient of E_p at u.
Vector quotient_gradient(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                         const OptionalFactor& w = std::nullopt);

/// Max relative deviation between quotient_gradient and central differences.
double grad_check(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p, double h_fd,
                  const OptionalFactor& w = std::nullopt);

/// Least-squares constant c in (A u)_j ~ c m_j w_j^{2#} u_j^{q-1} over the boundary,
/// and the relative misfit of that fit.
struct BoundaryFit {
  double c = 0.0;
  double misfit = 0.0;
};
BoundaryFit fit_boundary_constant(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u,
                                  double exponent, const OptionalFactor& w = std::nullopt);

struct IterateRecord {
  double E_value = 0.0;
  double I_value = 0.0;
  double gradient_norm = 0.0;  ///< relative: ||g|| ||u|| / E
  double step_size = 0.0;
  double fixed_point_distance = 0.0;
};

struct MinimizeTrace {
  std::vector<IterateRecord> iterates;  ///< accepted steps only
  bool converged = false;
  std::string stop_reason;
  Vector final_state;
};

struct QuotientReport {
  double p = 0.0;
  double q = 0.0;
  double E_value = 0.0;
  double I_value = 0.0;
  double deficit_E = 0.0;
  double deficit_I = 0.0;
  double c_mean_curvature = 0.0;
  double mu_estimate = 0.0;
  double mu_oc_estimate = 0.0;
  double fixed_point_distance = 0.0;
  double gradient_norm = 0.0;
  int accepted_steps = 0;
  std::size_t interior_zero_count = 0;
};

struct MinimizeOptions {
  double tol = 1e-12;        ///< relative E change that stops the run
  double grad_tol = 1e-9;    ///< relative projected-gradient norm that stops the run
  int max_iters = 5000;
  double min_step = 1e-16;
  ObstacleOptions obstacle;
  OptionalFactor conformal_factor;
};

struct MinimizeResult {
  MinimizeTrace trace;
  QuotientReport report;
};

/// Projected gradient descent u <- T(clip(u - eta grad E_p(u))), gauge-fixed
/// to ||u||_{p+1} = 1, with a Barzilai-Borwein trial step and backtracking
/// until E_p decreases.
MinimizeResult minimize(const EnergyForm& form, const BoundaryStructure& bs, double p, const Vector& init,
                        const MinimizeOptions& opts = {});

}  // namespace yo
