#include "yo/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace yo {

namespace {

// m_j w_j^{2#} per boundary index.
Vector boundary_measure(const BoundaryStructure& bs, const OptionalFactor& w) {
  Vector m = bs.weights();
  if (w) {
    for (std::size_t k = 0; k < bs.indices().size(); ++k) {
      m[static_cast<Eigen::Index>(k)] *= std::pow((*w)[bs.indices()[k]], bs.two_sharp());
    }
  }
  return m;
}

double squared_norm(const BoundaryStructure& bs, const Vector& u, double q, const OptionalFactor& w) {
  const double nrm = boundary_norm(bs, u, q, w);
  if (!(nrm > 0.0)) throw DomainError("quotient undefined: boundary trace vanishes");
  return nrm * nrm;
}

// u with negative interior entries set to 0 and boundary entries floored.
Vector clip_positive(const BoundaryStructure& bs, Vector u) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u[i] = std::max(u[i], bs.is_boundary(i) ? kBoundaryFloor : 0.0);
  }
  return u;
}

// Zero the gradient components that point out of the cone at active bounds.
Vector project_gradient(const BoundaryStructure& bs, const Vector& u, Vector g) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double floor = bs.is_boundary(i) ? kBoundaryFloor : 0.0;
    if (u[i] <= floor && g[i] > 0.0) g[i] = 0.0;
  }
  return g;
}

}  // namespace

void require_exponent(const BoundaryStructure& bs, double p) {
  const double pmax = bs.two_sharp() - 1.0;
  if (!(p >= 1.0) || p > pmax * (1.0 + 1e-15)) {
    std::ostringstream os;
    os << "exponent p must lie in [1, " << pmax << "], got " << p;
    throw DomainError(os.str());
  }
}

double energy_quotient(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                       const OptionalFactor& w) {
  require_exponent(bs, p);
  return pair(form, u, u) / squared_norm(bs, u, p + 1.0, w);
}

double control_quotient(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                        const ObstacleOptions& opts, const OptionalFactor& w) {
  require_exponent(bs, p);
  const ObstacleSolution t = obstacle_map(form, bs, u, opts);
  return pair(form, u, u) / squared_norm(bs, t.state, p + 1.0, w);
}

Deficit deficit_E(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                  const ObstacleOptions& opts, const OptionalFactor& w) {
  require_exponent(bs, p);
  const double q = p + 1.0;
  const Vector tu = obstacle_map(form, bs, u, opts).state;
  const double uu = pair(form, u, u);
  const double tt = pair(form, tu, tu);
  const double nt = squared_norm(bs, tu, q, w);
  return {uu / squared_norm(bs, u, q, w) - tt / nt, (uu - tt) / nt};
}

Deficit deficit_I(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                  const ObstacleOptions& opts, const OptionalFactor& w) {
  require_exponent(bs, p);
  const double q = p + 1.0;
  const Vector tu = obstacle_map(form, bs, u, opts).state;
  const Vector ttu = obstacle_map(form, bs, tu, opts).state;
  const double uu = pair(form, u, u);
  const double tt = pair(form, tu, tu);
  const double nt = squared_norm(bs, tu, q, w);
  return {uu / nt - tt / squared_norm(bs, ttu, q, w), (uu - tt) / nt};
}

double composed_equality_check(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                               const ObstacleOptions& opts, const OptionalFactor& w) {
  const Vector tu = obstacle_map(form, bs, u, opts).state;
  return std::abs(energy_quotient(form, bs, tu, p, w) - control_quotient(form, bs, tu, p, opts, w));
}

Vector quotient_gradient(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p,
                         const OptionalFactor& w) {
  require_exponent(bs, p);
  const double q = p + 1.0;
  const Vector m = boundary_measure(bs, w);
  const Vector au = form.matrix() * u;
  const double num = u.dot(au);

  double sum = 0.0;
  for (std::size_t k = 0; k < bs.indices().size(); ++k) {
    sum += m[static_cast<Eigen::Index>(k)] * std::pow(std::abs(u[bs.indices()[k]]), q);
  }
  if (!(sum > 0.0)) throw DomainError("quotient undefined: boundary trace vanishes");
  const double den = std::pow(sum, 2.0 / q);
  // d(den)/du_j = 2 sum^{2/q - 1} m_j |u_j|^{q-2} u_j
  const double dscale = 2.0 * std::pow(sum, 2.0 / q - 1.0);

  Vector g = (2.0 / den) * au;
  for (std::size_t k = 0; k < bs.indices().size(); ++k) {
    const auto i = bs.indices()[k];
    const double uj = u[i];
    const double dden = dscale * m[static_cast<Eigen::Index>(k)] * std::pow(std::abs(uj), q - 2.0) * uj;
    g[i] -= num * dden / (den * den);
  }
  return g;
}

double grad_check(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double p, double h_fd,
                  const OptionalFactor& w) {
  const Vector g = quotient_gradient(form, bs, u, p, w);
  const double gscale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  double worst = 0.0;
  Vector probe = u;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double step = h_fd * std::max(1.0, std::abs(u[i]));
    probe[i] = u[i] + step;
    const double plus = energy_quotient(form, bs, probe, p, w);
    probe[i] = u[i] - step;
    const double minus = energy_quotient(form, bs, probe, p, w);
    probe[i] = u[i];
    const double fd = (plus - minus) / (2.0 * step);
    worst = std::max(worst, std::abs(fd - g[i]) / gscale);
  }
  return worst;
}

BoundaryFit fit_boundary_constant(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u,
                                  double exponent, const OptionalFactor& w) {
  const Vector m = boundary_measure(bs, w);
  const Vector au = form.matrix() * u;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < bs.indices().size(); ++k) {
    const auto i = bs.indices()[k];
    const double g = std::pow(u[i], exponent);
    num += au[i] * g;
    den += m[static_cast<Eigen::Index>(k)] * g * g;
  }
  BoundaryFit fit;
  if (!(den > 0.0)) throw DomainError("boundary fit undefined: boundary trace vanishes");
  fit.c = num / den;
  double misfit = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < bs.indices().size(); ++k) {
    const auto i = bs.indices()[k];
    const double mk = m[static_cast<Eigen::Index>(k)];
    const double f = au[i] / mk;
    const double r = f - fit.c * std::pow(u[i], exponent);
    misfit += mk * r * r;
    scale += mk * f * f;
  }
  fit.misfit = scale > 0.0 ? std::sqrt(misfit / scale) : 0.0;
  return fit;
}

MinimizeResult minimize(const EnergyForm& form, const BoundaryStructure& bs, double p, const Vector& init,
                        const MinimizeOptions& opts) {
  require_exponent(bs, p);
  require_admissible(bs, init);
  const double q = p + 1.0;
  const auto& w = opts.conformal_factor;

  // Re-floor after scaling: a trace entry sitting at the floor would otherwise
  // drop below it whenever the norm exceeds one.
  auto normalized = [&](Vector v) {
    v /= boundary_norm(bs, v, q, w);
    return clip_positive(bs, std::move(v));
  };
  auto relative_gradient = [&](const Vector& u, const Vector& g, double e) {
    return project_gradient(bs, u, g).norm() * u.norm() / e;
  };

  MinimizeResult result;
  MinimizeTrace& trace = result.trace;

  Vector u = normalized(clip_positive(bs, init));
  double e = energy_quotient(form, bs, u, p, w);
  Vector g = quotient_gradient(form, bs, u, p, w);
  bool projected = is_fixed_point(form, bs, u, 1e-10, opts.obstacle).is_fixed;

  double eta = 0.0;
  Vector prev_u;
  Vector prev_g;
  trace.stop_reason = "max iterations";
  for (int k = 0; k < opts.max_iters; ++k) {
    const double gnorm = relative_gradient(u, g, e);
    if (projected && gnorm <= opts.grad_tol) {
      trace.converged = true;
      trace.stop_reason = "stationary";
      break;
    }

    if (prev_u.size() > 0) {
      const Vector s = u - prev_u;
      const Vector y = g - prev_g;
      const double sy = s.dot(y);
      eta = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * eta;
    } else {
      eta = 0.1 * u.norm() / std::max(g.norm(), 1e-300);
    }

    bool accepted = false;
    Vector candidate;
    double e_candidate = e;
    double fp_distance = 0.0;
    for (; eta >= opts.min_step; eta *= 0.5) {
      ObstacleOptions oo = opts.obstacle;
      const Vector v = clip_positive(bs, u - eta * g);
      oo.warm_start = v;
      const ObstacleSolution t = obstacle_map(form, bs, v, oo);
      candidate = normalized(t.state);
      e_candidate = energy_quotient(form, bs, candidate, p, w);
      if (e_candidate < e) {
        accepted = true;
        break;
      }
    }
    if (!accepted && !projected) {
      // A pure T-step never increases E_p.
      candidate = normalized(obstacle_map(form, bs, u, opts.obstacle).state);
      e_candidate = energy_quotient(form, bs, candidate, p, w);
      accepted = e_candidate <= e;
      eta = 0.0;
    }
    if (!accepted) {
      trace.stop_reason = "line search failed";
      break;
    }

    const double rel_change = (e - e_candidate) / e;
    prev_u = u;
    prev_g = g;
    u = std::move(candidate);
    e = e_candidate;
    g = quotient_gradient(form, bs, u, p, w);
    projected = true;

    const ObstacleSolution tu = obstacle_map(form, bs, u, opts.obstacle);
    const double un = energy_norm(form, u);
    fp_distance = un > 0.0 ? energy_norm(form, tu.state - u) / un : 0.0;
    IterateRecord rec;
    rec.E_value = e;
    rec.I_value = pair(form, u, u) / squared_norm(bs, tu.state, q, w);
    rec.gradient_norm = relative_gradient(u, g, e);
    rec.step_size = eta;
    rec.fixed_point_distance = fp_distance;
    trace.iterates.push_back(rec);

    if (rel_change < opts.tol) {
      trace.converged = true;
      trace.stop_reason = "relative change";
      break;
    }
  }
  trace.final_state = u;

  QuotientReport& rep = result.report;
  rep.p = p;
  rep.q = q;
  rep.E_value = e;
  rep.I_value = control_quotient(form, bs, u, p, opts.obstacle, w);
  rep.deficit_E = deficit_E(form, bs, u, p, opts.obstacle, w).lhs;
  rep.deficit_I = deficit_I(form, bs, u, p, opts.obstacle, w).lhs;
  rep.c_mean_curvature = fit_boundary_constant(form, bs, u, q - 1.0, w).c;
  rep.mu_estimate = rep.E_value;
  rep.mu_oc_estimate = rep.I_value;
  rep.fixed_point_distance = is_fixed_point(form, bs, u, 0.0, opts.obstacle).distance;
  rep.gradient_norm = relative_gradient(u, g, e);
  rep.accepted_steps = static_cast<int>(trace.iterates.size());
  rep.interior_zero_count = interior_zeros(bs, u).size();
  return result;
}

}  // namespace yo
