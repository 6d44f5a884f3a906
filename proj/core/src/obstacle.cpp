#include "yo/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace yo {

namespace {

using Mask = std::vector<bool>;

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct EqualitySolve {
  Vector state;
  Vector multipliers;
  bool ok = false;
};

// Fix state = bound on the active set, solve A_II x_I = -A_IA b_A, and read
// multipliers off the active rows of A x.
EqualitySolve solve_with_active_set(const SparseMatrix& a, const Vector& bound, const Mask& active) {
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> local(static_cast<std::size_t>(n), -1);
  Eigen::Index n_free = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!active[static_cast<std::size_t>(i)]) local[static_cast<std::size_t>(i)] = n_free++;
  }

  EqualitySolve out;
  out.state = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (active[static_cast<std::size_t>(i)]) out.state[i] = bound[i];
  }

  if (n_free > 0) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(a.nonZeros()));
    Vector rhs = Vector::Zero(n_free);
    for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
      const auto lc = local[static_cast<std::size_t>(col)];
      for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
        const auto lr = local[static_cast<std::size_t>(it.row())];
        if (lr < 0) continue;
        if (lc >= 0) {
          triplets.emplace_back(lr, lc, it.value());
        } else {
          rhs[lr] -= it.value() * out.state[col];
        }
      }
    }
    SparseMatrix sub(n_free, n_free);
    sub.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLLT<SparseMatrix> llt(sub);
    if (llt.info() != Eigen::Success) return out;
    const Vector x_free = llt.solve(rhs);
    if (llt.info() != Eigen::Success) return out;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto li = local[static_cast<std::size_t>(i)];
      if (li >= 0) out.state[i] = x_free[li];
    }
  }

  const Vector ax = a * out.state;
  out.multipliers = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (active[static_cast<std::size_t>(i)]) out.multipliers[i] = ax[i];
  }
  out.ok = true;
  return out;
}

Mask update_active_set(const SparseMatrix& a, const Vector& diag, const Vector& bound, const Vector& x,
                       const Vector& lambda) {
  const double scale = std::max(inf_norm(a * x), diag.maxCoeff() * std::max(inf_norm(x), inf_norm(bound)));
  const double tie = 1e-14 * scale;
  Mask active(static_cast<std::size_t>(x.size()), false);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double indicator = lambda[i] + diag[i] * (bound[i] - x[i]);
    active[static_cast<std::size_t>(i)] = indicator > tie;
  }
  return active;
}

std::vector<Eigen::Index> active_indices(const Mask& m) {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) out.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

ObstacleSolution finish(const EnergyForm& form, const LowerBound& bound, Vector state, Vector multipliers,
                        const Mask& active, int iterations, bool fallback) {
  ObstacleSolution sol;
  sol.kkt_residual = kkt_residual(form, bound, state, multipliers);
  sol.energy = pair(form, state, state);
  sol.state = std::move(state);
  sol.multipliers = std::move(multipliers);
  sol.active_set = active_indices(active);
  sol.iterations = iterations;
  sol.used_fallback = fallback;
  return sol;
}

struct PdasOutcome {
  bool converged = false;
  EqualitySolve last;
  Mask active;
  int iterations = 0;
};

PdasOutcome run_pdas(const EnergyForm& form, const LowerBound& bound, const Vector& diag, Mask active,
                     int max_iterations, double tol) {
  const auto& a = form.matrix();
  PdasOutcome out;
  std::set<Mask> visited;
  for (int k = 0; k < max_iterations; ++k) {
    visited.insert(active);
    EqualitySolve step = solve_with_active_set(a, bound.values, active);
    out.iterations = k + 1;
    if (!step.ok) break;
    Mask next = update_active_set(a, diag, bound.values, step.state, step.multipliers);
    out.last = std::move(step);
    out.active = active;
    if (next == active) {
      out.converged = kkt_residual(form, bound, out.last.state, out.last.multipliers) <= tol;
      return out;
    }
    if (visited.count(next)) break;  // cycling
    active = std::move(next);
  }
  return out;
}

// Projected SOR sweeps in index order; returns when the KKT residual of the
// implied multipliers drops below `target` or the sweep budget runs out.
int projected_sor(const EnergyForm& form, const LowerBound& bound, const Vector& diag, Vector& x,
                  double omega, int max_sweeps, double target, double& residual, Vector& lambda) {
  const auto& a = form.matrix();
  const Eigen::Index n = x.size();
  auto implied_multipliers = [&](const Vector& state) {
    const Vector ax = a * state;
    const double scale = std::max(1.0, inf_norm(state));
    Vector lam = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (state[i] - bound.values[i] <= 1e-12 * scale) lam[i] = ax[i];
    }
    return lam;
  };
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(a, i); it; ++it) row += it.value() * x[it.row()];
      x[i] = std::max(bound.values[i], x[i] - omega * row / diag[i]);
    }
    if (sweep % 10 == 9) {
      lambda = implied_multipliers(x);
      residual = kkt_residual(form, bound, x, lambda);
      if (residual <= target) return sweep + 1;
    }
  }
  lambda = implied_multipliers(x);
  residual = kkt_residual(form, bound, x, lambda);
  return sweep;
}

}  // namespace

LowerBound make_bound(const BoundaryStructure& bs, const Vector& u) {
  if (u.size() != bs.dim()) throw InputError("make_bound: dimension mismatch");
  LowerBound bound{Vector::Zero(bs.dim())};
  for (const auto i : bs.indices()) {
    if (!(u[i] >= kBoundaryFloor)) throw DomainError("make_bound: state must be positive on the boundary");
    bound.values[i] = u[i];
  }
  return bound;
}

double kkt_residual(const EnergyForm& form, const LowerBound& bound, const Vector& state,
                    const Vector& multipliers) {
  const auto& a = form.matrix();
  const Vector ax = a * state;
  const double x_scale = std::max(inf_norm(state), inf_norm(bound.values));
  if (x_scale == 0.0) return inf_norm(multipliers);
  const double f_scale = std::max(inf_norm(ax), a.diagonal().maxCoeff() * x_scale);

  double primal = 0.0;
  double dual = 0.0;
  double compl_ = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    primal = std::max(primal, bound.values[i] - state[i]);
    dual = std::max(dual, -multipliers[i]);
    compl_ = std::max(compl_, std::abs((state[i] - bound.values[i]) * multipliers[i]));
  }
  const double stationarity = inf_norm(ax - multipliers);
  return std::max({primal / x_scale, dual / f_scale, compl_ / (x_scale * f_scale), stationarity / f_scale});
}

ObstacleSolution solve_obstacle(const EnergyForm& form, const LowerBound& bound, const ObstacleOptions& opts) {
  const Eigen::Index n = form.dim();
  if (bound.values.size() != n) throw InputError("solve_obstacle: bound has wrong dimension");
  if ((bound.values.array() < 0.0).any()) throw DomainError("solve_obstacle: bound must be nonnegative");
  if (form.pivot_ratio() > opts.max_pivot_ratio) {
    std::ostringstream os;
    os << "solve_obstacle: instance flagged as ill-conditioned (pivot ratio " << form.pivot_ratio() << ")";
    throw HypothesisError(os.str());
  }

  const auto& a = form.matrix();
  const Vector diag = a.diagonal();

  Vector x0 = bound.values;
  if (opts.warm_start) {
    if (opts.warm_start->size() != n) throw InputError("solve_obstacle: warm start has wrong dimension");
    x0 = opts.warm_start->cwiseMax(bound.values);
  }
  const Mask initial = update_active_set(a, diag, bound.values, x0, a * x0);

  PdasOutcome pdas = run_pdas(form, bound, diag, initial, opts.max_iterations, opts.tol);
  if (pdas.converged) {
    return finish(form, bound, std::move(pdas.last.state), std::move(pdas.last.multipliers), pdas.active,
                  pdas.iterations, false);
  }

  // Fallback: projected SOR to a moderate tolerance, then let PDAS polish
  // from the active set SOR identified.
  Vector x = pdas.last.ok ? pdas.last.state.cwiseMax(bound.values) : x0;
  double residual = 0.0;
  Vector lambda;
  int iterations = pdas.iterations;
  iterations += projected_sor(form, bound, diag, x, opts.omega, opts.max_sweeps, std::max(opts.tol, 1e-7),
                              residual, lambda);
  const Mask from_sor = update_active_set(a, diag, bound.values, x, lambda);
  PdasOutcome polish = run_pdas(form, bound, diag, from_sor, opts.max_iterations, opts.tol);
  iterations += polish.iterations;
  if (polish.converged) {
    return finish(form, bound, std::move(polish.last.state), std::move(polish.last.multipliers), polish.active,
                  iterations, true);
  }
  if (residual > opts.tol) {
    iterations += projected_sor(form, bound, diag, x, opts.omega, opts.max_sweeps, opts.tol, residual, lambda);
  }
  if (residual > opts.tol) {
    std::ostringstream os;
    os << "solve_obstacle: no convergence (KKT residual " << residual << " > " << opts.tol << ")";
    throw SolverError(os.str(), x, residual);
  }
  Mask active(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = lambda[i] != 0.0;
  return finish(form, bound, std::move(x), std::move(lambda), active, iterations, true);
}

ObstacleSolution obstacle_map(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u,
                              ObstacleOptions opts) {
  if (bs.dim() != form.dim()) throw InputError("obstacle_map: boundary/form dimension mismatch");
  LowerBound bound = make_bound(bs, u);
  if (!opts.warm_start) opts.warm_start = u.cwiseMax(0.0);
  return solve_obstacle(form, bound, opts);
}

ObstacleSolution oracle_enumerate(const EnergyForm& form, const LowerBound& bound) {
  const Eigen::Index n = form.dim();
  if (bound.values.size() != n) throw InputError("oracle_enumerate: bound has wrong dimension");
  if (n > kMaxEnumerated) throw InputError("oracle_enumerate: too many constrained indices to enumerate");

  const Eigen::MatrixXd a = Eigen::MatrixXd(form.matrix());
  const Vector& b = bound.values;
  const double x_scale = std::max(1.0, inf_norm(b));
  const double f_scale = std::max(1.0, a.cwiseAbs().maxCoeff() * x_scale);

  bool found = false;
  double best_energy = 0.0;
  Vector best_x;
  Vector best_lambda;
  Mask best_mask;
  const std::uint32_t subsets = 1u << n;
  for (std::uint32_t bits = 0; bits < subsets; ++bits) {
    std::vector<Eigen::Index> act;
    std::vector<Eigen::Index> fre;
    for (Eigen::Index i = 0; i < n; ++i) ((bits >> i) & 1u ? act : fre).push_back(i);

    Vector x = Vector::Zero(n);
    for (auto i : act) x[i] = b[i];
    if (!fre.empty()) {
      const auto nf = static_cast<Eigen::Index>(fre.size());
      Eigen::MatrixXd sub(nf, nf);
      Vector rhs = Vector::Zero(nf);
      for (Eigen::Index r = 0; r < nf; ++r) {
        for (Eigen::Index c = 0; c < nf; ++c) sub(r, c) = a(fre[r], fre[c]);
        for (auto j : act) rhs[r] -= a(fre[r], j) * b[j];
      }
      const Vector xf = sub.ldlt().solve(rhs);
      for (Eigen::Index r = 0; r < nf; ++r) x[fre[r]] = xf[r];
    }
    const Vector ax = a * x;
    bool feasible = true;
    for (auto i : fre) feasible = feasible && x[i] >= b[i] - 1e-12 * x_scale;
    for (auto i : act) feasible = feasible && ax[i] >= -1e-12 * f_scale;
    if (!feasible) continue;

    const double energy = x.dot(ax);
    if (!found || energy < best_energy) {
      found = true;
      best_energy = energy;
      best_x = x;
      best_lambda = Vector::Zero(n);
      for (auto i : act) best_lambda[i] = ax[i];
      best_mask.assign(static_cast<std::size_t>(n), false);
      for (auto i : act) best_mask[static_cast<std::size_t>(i)] = true;
    }
  }
  if (!found) throw SolverError("oracle_enumerate: no KKT point found", b, 0.0);
  return finish(form, bound, std::move(best_x), std::move(best_lambda), best_mask, static_cast<int>(subsets),
                false);
}

FixedPointCheck is_fixed_point(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double tol,
                               const ObstacleOptions& opts) {
  const ObstacleSolution t = obstacle_map(form, bs, u, opts);
  const double denom = energy_norm(form, u);
  FixedPointCheck out;
  out.distance = denom > 0.0 ? energy_norm(form, t.state - u) / denom : 0.0;
  out.is_fixed = out.distance <= tol;
  return out;
}

}  // namespace yo
