#include "yo/lemma_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "yo/functionals.hpp"
#include "yo/obstacle.hpp"

namespace yo {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

class Recorder {
 public:
  Recorder(std::string name, std::string statement, double tol, bool expect_violation = false) {
    check_.name = std::move(name);
    check_.statement = std::move(statement);
    check_.tolerance = tol;
    check_.expect_violation = expect_violation;
  }

  void sample(const std::function<double()>& body) {
    ++check_.samples;
    try {
      const double r = body();
      check_.max_residual = std::max(check_.max_residual, std::isnan(r) ? std::numeric_limits<double>::infinity() : r);
    } catch (const std::exception& e) {
      check_.max_residual = std::numeric_limits<double>::infinity();
      if (check_.first_error.empty()) check_.first_error = e.what();
    }
  }

  LemmaCheck result() const {
    LemmaCheck c = check_;
    c.passed = c.expect_violation ? c.max_residual > c.tolerance && std::isfinite(c.max_residual)
                                  : c.max_residual <= c.tolerance;
    return c;
  }

 private:
  LemmaCheck check_;
};

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng, int min_dim, int max_dim, int max_boundary) {
  const int n = uniform_int(rng, 3, 6);
  const int dim = uniform_int(rng, min_dim, max_dim);
  const int nb = uniform_int(rng, 1, std::min(max_boundary, dim));

  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = normal(rng);
  }
  Eigen::MatrixXd a = m * m.transpose() / dim;
  a.diagonal().array() += uniform(rng, 0.05, 1.0);

  std::vector<Eigen::Index> all(static_cast<std::size_t>(dim));
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<Eigen::Index> boundary(all.begin(), all.begin() + nb);
  Vector weights(nb);
  for (int k = 0; k < nb; ++k) weights[k] = uniform(rng, 0.5, 1.5);

  BoundaryStructure bs(dim, boundary, weights, n);
  Vector u(dim);
  Vector w(dim);
  for (int i = 0; i < dim; ++i) {
    if (bs.is_boundary(i)) {
      u[i] = uniform(rng, 0.1, 2.0);
    } else {
      u[i] = uniform(rng, 0.0, 1.0) < 0.2 ? 0.0 : uniform(rng, 0.0, 2.0);
    }
    w[i] = uniform(rng, 0.3, 3.0);
  }
  const double p = uniform(rng, 1.0, bs.two_sharp() - 1.0);
  return {EnergyForm::from_dense(a, n), std::move(bs), std::move(u), PositiveField(std::move(w)), p};
}

std::vector<LemmaCheck> run_lemma_suite(const LemmaSuiteOptions& opts) {
  const double tol = opts.tol;
  Recorder idempotency("idempotency", "||T(T u) - T u||_A <= tol ||T u||_A", tol);
  Recorder homogeneity("homogeneity", "||T(l u) - l T(u)||_A <= tol l ||T u||_A, l in {0.1, 2, 10}", tol);
  Recorder scale_inv("scale_invariance", "E_p(l u) = E_p(u) and I_p(l u) = I_p(u), l = 3", tol);
  Recorder energy_mono("energy_monotonicity", "<Tu,Tu> <= <u,u>", tol);
  Recorder domination("trace_domination", "tr(T u) >= tr(u)", tol);
  Recorder pullback_energy("pullback_energy_identity", "<u,u>_{A_w} = <w u, w u>_A", tol);
  Recorder covariance("conformal_covariance_T", "T_{A_w}(u) = w^{-1} T_A(w u)", tol);
  Recorder fix_cov("fix_set_covariance", "u in Fix(T_{A_w}) iff w u in Fix(T_A)", tol);
  Recorder norm_cov("boundary_norm_covariance", "||u||_{2#, w} = ||w u||_{2#}", tol);
  Recorder norm_break("subcritical_norm_not_invariant", "||u||_{2, w} != ||w u||_{2} for some (u, w)", 1e-3, true);
  Recorder quotient_cov("quotient_covariance", "E^{w}(u) = E(w u) and I^{w}(u) = I(w u) at p = 2# - 1", tol);
  Recorder i_le_e("I_le_E", "I_p(u) <= E_p(u)", tol);
  Recorder composed("E_T_equals_I_T", "E_p(T u) = I_p(T u)", tol);
  Recorder deficit_ineq("deficit_inequality_E", "E_p(u) - E_p(Tu) >= (<u,u> - <Tu,Tu>)/||Tu||^2 >= 0", tol);
  Recorder deficit_eq("deficit_equality_I", "I_p(u) - I_p(Tu) = (<u,u> - <Tu,Tu>)/||Tu||^2", tol);
  Recorder uniqueness("uniqueness", "T(u) independent of the feasible warm start", tol);
  Recorder oracle("oracle_agreement", "PDAS agrees with exhaustive KKT enumeration (dim <= oracle_max_dim)",
                  opts.oracle_tol);

  std::mt19937_64 rng(opts.seed);
  ObstacleOptions oo;
  for (int trial = 0; trial < opts.trials; ++trial) {
    const RandomInstance inst = random_instance(rng, 2, opts.max_dim, opts.max_boundary);
    const auto& a = inst.form;
    const auto& bs = inst.boundary;
    const Vector& u = inst.state;
    const PositiveField& w = inst.factor;
    const double p = inst.p;
    const double pc = bs.exponents().critical_p();

    const Vector tu = obstacle_map(a, bs, u, oo).state;
    const double tu_norm = energy_norm(a, tu);

    idempotency.sample([&] { return energy_norm(a, obstacle_map(a, bs, tu, oo).state - tu) / tu_norm; });
    homogeneity.sample([&] {
      double worst = 0.0;
      for (double l : {0.1, 2.0, 10.0}) {
        const Vector tl = obstacle_map(a, bs, Vector(l * u), oo).state;
        worst = std::max(worst, energy_norm(a, tl - l * tu) / (l * tu_norm));
      }
      return worst;
    });
    scale_inv.sample([&] {
      const Vector u3 = 3.0 * u;
      const double e = energy_quotient(a, bs, u, p);
      const double i = control_quotient(a, bs, u, p, oo);
      return std::max(std::abs(energy_quotient(a, bs, u3, p) - e) / e,
                      std::abs(control_quotient(a, bs, u3, p, oo) - i) / i);
    });
    energy_mono.sample([&] { return std::max(0.0, pair(a, tu, tu) - pair(a, u, u)) / pair(a, u, u); });
    domination.sample([&] {
      double worst = 0.0;
      for (auto i : bs.indices()) worst = std::max(worst, u[i] - tu[i]);
      return worst / u.cwiseAbs().maxCoeff();
    });

    const EnergyForm aw = pullback_form(a, w);
    const Vector wu = push_field(w, u);
    pullback_energy.sample([&] { return std::abs(pair(aw, u, u) - pair(a, wu, wu)) / pair(a, wu, wu); });
    covariance.sample([&] {
      const Vector lhs = obstacle_map(aw, bs, u, oo).state;
      const Vector rhs = obstacle_map(a, bs, wu, oo).state.cwiseQuotient(w.values());
      return energy_norm(aw, lhs - rhs) / energy_norm(aw, lhs);
    });
    fix_cov.sample([&] {
      // Distances agree identically; a fixed point of T_A pulls back to one of T_{A_w}.
      const double d_w = is_fixed_point(aw, bs, u, 0.0, oo).distance;
      const double d = is_fixed_point(a, bs, wu, 0.0, oo).distance;
      const Vector fixed = obstacle_map(a, bs, wu, oo).state;
      const Vector pulled = fixed.cwiseQuotient(w.values());
      return std::max({std::abs(d_w - d), is_fixed_point(aw, bs, pulled, 0.0, oo).distance,
                       is_fixed_point(a, bs, fixed, 0.0, oo).distance});
    });
    norm_cov.sample([&] {
      const double q = bs.two_sharp();
      const double rhs = boundary_norm(bs, wu, q);
      return std::abs(boundary_norm(bs, u, q, w) - rhs) / rhs;
    });
    norm_break.sample([&] {
      const double rhs = boundary_norm(bs, wu, 2.0);
      return std::abs(boundary_norm(bs, u, 2.0, w) - rhs) / rhs;
    });
    quotient_cov.sample([&] {
      const double e = energy_quotient(a, bs, wu, pc);
      const double i = control_quotient(a, bs, wu, pc, oo);
      return std::max(std::abs(energy_quotient(aw, bs, u, pc, w) - e) / e,
                      std::abs(control_quotient(aw, bs, u, pc, oo, w) - i) / i);
    });
    i_le_e.sample([&] {
      const double e = energy_quotient(a, bs, u, p);
      return std::max(0.0, control_quotient(a, bs, u, p, oo) - e) / e;
    });
    composed.sample([&] { return composed_equality_check(a, bs, u, p, oo) / energy_quotient(a, bs, tu, p); });
    deficit_ineq.sample([&] {
      const Deficit d = deficit_E(a, bs, u, p, oo);
      return std::max({0.0, d.rhs - d.lhs, -d.rhs}) / energy_quotient(a, bs, u, p);
    });
    deficit_eq.sample([&] {
      const Deficit d = deficit_I(a, bs, u, p, oo);
      return std::abs(d.lhs - d.rhs) / control_quotient(a, bs, u, p, oo);
    });
    uniqueness.sample([&] {
      double worst = 0.0;
      const LowerBound bound = make_bound(bs, u);
      for (int k = 0; k < 5; ++k) {
        ObstacleOptions warm = oo;
        Vector start = bound.values;
        for (Eigen::Index i = 0; i < start.size(); ++i) start[i] += uniform(rng, 0.0, 3.0);
        warm.warm_start = start;
        worst = std::max(worst, energy_norm(a, solve_obstacle(a, bound, warm).state - tu) / tu_norm);
      }
      return worst;
    });

    const RandomInstance small = random_instance(rng, 1, opts.oracle_max_dim, opts.max_boundary);
    oracle.sample([&] {
      const LowerBound bound = make_bound(small.boundary, small.state);
      const Vector expected = oracle_enumerate(small.form, bound).state;
      const Vector got = solve_obstacle(small.form, bound, oo).state;
      return (got - expected).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff();
    });
  }

  return {idempotency.result(),  homogeneity.result(),  scale_inv.result(),   energy_mono.result(),
          domination.result(),   pullback_energy.result(), covariance.result(), fix_cov.result(),
          norm_cov.result(),     norm_break.result(),   quotient_cov.result(), i_le_e.result(),
          composed.result(),     deficit_ineq.result(), deficit_eq.result(),  uniqueness.result(),
          oracle.result()};
}

}  // namespace yo
