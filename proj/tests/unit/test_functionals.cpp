#include <gtest/gtest.h>

#include "support.hpp"
#include "yo/functionals.hpp"
#include "yo/lemma_suite.hpp"

using namespace yo;
using yo::test::rel;
using yo::test::vec;

TEST(Quotients, Fixture) {
  const auto f = test::tiny_form();
  const auto bs = test::tiny_boundary();
  for (double p : {1.0, 2.0, 3.0}) {
    EXPECT_DOUBLE_EQ(energy_quotient(f, bs, vec({2, 1}), p), 6.0);
    EXPECT_NEAR(control_quotient(f, bs, vec({2, 1}), p), 6.0, 1e-13);
    EXPECT_NEAR(energy_quotient(f, bs, vec({0.5, 1}), p), 1.5, 1e-14);
  }
}

TEST(Quotients, FixtureDeficits) {
  const auto f = test::tiny_form();
  const auto bs = test::tiny_boundary();
  const auto de = deficit_E(f, bs, vec({2, 1}), 3.0);
  EXPECT_NEAR(de.lhs, 4.5, 1e-13);
  EXPECT_NEAR(de.rhs, 4.5, 1e-13);
  const auto di = deficit_I(f, bs, vec({2, 1}), 3.0);
  EXPECT_NEAR(di.lhs, 4.5, 1e-13);
  EXPECT_NEAR(di.rhs, 4.5, 1e-13);
}

TEST(Quotients, ExponentRange) {
  const auto f = test::tiny_form();
  const auto bs = test::tiny_boundary();
  EXPECT_THROW(energy_quotient(f, bs, vec({1, 1}), 0.5), DomainError);
  EXPECT_THROW(energy_quotient(f, bs, vec({1, 1}), 3.5), DomainError);
  EXPECT_NO_THROW(energy_quotient(f, bs, vec({1, 1}), 3.0));
}

TEST(Gradient, MatchesFiniteDifferencesOnRandomInstances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + trial % 19;
    auto pr = test::random_problem(rng, dim, 1 + trial % dim);
    auto u = test::random_state(rng, pr.boundary);
    const double p = 1.0 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    EXPECT_LE(grad_check(pr.form, pr.boundary, u, p, 1e-6), 1e-5) << "trial " << trial;
    auto w = test::random_factor(rng, dim);
    EXPECT_LE(grad_check(pr.form, pr.boundary, u, p, 1e-6, w), 1e-5) << "trial " << trial;
  }
}

TEST(Gradient, ZeroHomogeneity) {
  std::mt19937_64 rng(3);
  auto pr = test::random_problem(rng, 12, 5);
  auto u = test::random_state(rng, pr.boundary);
  const Vector g = quotient_gradient(pr.form, pr.boundary, u, 2.5);
  // Euler: E is 0-homogeneous, so g . u = 0 and grad E(t u) = grad E(u) / t.
  EXPECT_NEAR(g.dot(u), 0.0, 1e-12 * g.norm() * u.norm());
  const Vector g3 = quotient_gradient(pr.form, pr.boundary, 3.0 * u, 2.5);
  EXPECT_LE((3.0 * g3 - g).norm(), 1e-12 * g.norm());
}

TEST(BoundaryFit, RecoversPlantedConstant) {
  // Construct A u = c m u^3 on the boundary by choosing the diagonal.
  const auto bs = BoundaryStructure(3, {0, 2}, vec({1.0, 2.0}));
  const Vector u = vec({1.0, 0.5, 2.0});
  Eigen::MatrixXd a(3, 3);
  a << 0, -1, 0, -1, 4, -1, 0, -1, 0;
  const double c = 1.7;
  a(0, 0) = (c * 1.0 * std::pow(u[0], 3) + u[1]) / u[0];
  a(2, 2) = (c * 2.0 * std::pow(u[2], 3) + u[1]) / u[2];
  const auto f = EnergyForm::from_dense(a);
  const auto fit = fit_boundary_constant(f, bs, u, 3.0);
  EXPECT_NEAR(fit.c, c, 1e-12);
  EXPECT_NEAR(fit.misfit, 0.0, 1e-12);
}

TEST(Minimize, FixtureConvergesToHarmonicState) {
  const auto r = minimize(test::tiny_form(), test::tiny_boundary(), 3.0, vec({2, 1}));
  EXPECT_TRUE(r.trace.converged);
  EXPECT_NEAR(r.report.mu_estimate, 1.5, 1e-10);
  EXPECT_NEAR(r.report.mu_oc_estimate, 1.5, 1e-10);
  EXPECT_LE(r.report.fixed_point_distance, 1e-6);
  EXPECT_NEAR(r.trace.final_state[0] / r.trace.final_state[1], 0.5, 1e-8);
}

TEST(Minimize, StartingAtMinimizerTakesNoSteps) {
  const auto r = minimize(test::tiny_form(), test::tiny_boundary(), 3.0, vec({0.5, 1}));
  EXPECT_TRUE(r.trace.converged);
  EXPECT_EQ(r.report.accepted_steps, 0);
  EXPECT_NEAR(r.report.mu_estimate, 1.5, 1e-14);
}

TEST(Minimize, RejectsInadmissibleStart) {
  EXPECT_THROW(minimize(test::tiny_form(), test::tiny_boundary(), 3.0, vec({1, 0})), DomainError);
}

TEST(Minimize, IterationCapReportsNotConverged) {
  std::mt19937_64 rng(4);
  auto pr = test::random_problem(rng, 20, 6);
  MinimizeOptions mo;
  mo.max_iters = 1;
  const auto r = minimize(pr.form, pr.boundary, 3.0, test::random_state(rng, pr.boundary), mo);
  EXPECT_FALSE(r.trace.converged);
  EXPECT_FALSE(r.trace.stop_reason.empty());
}

// Along every run: E never increases, mu and mu_oc coincide, converged runs end at a fixed point.
class MinimizeProperties : public ::testing::TestWithParam<int> {};

TEST_P(MinimizeProperties, Hold) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(1000 + GetParam()));
  const int dim = 4 + GetParam() % 16;
  auto pr = test::random_problem(rng, dim, 2 + GetParam() % std::min(6, dim - 2));
  const double p = 1.0 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng);
  const Vector u0 = test::random_state(rng, pr.boundary);
  const auto r = minimize(pr.form, pr.boundary, p, u0);

  double prev = energy_quotient(pr.form, pr.boundary, u0, p);
  for (const auto& it : r.trace.iterates) {
    EXPECT_LE(it.E_value, prev * (1 + 1e-12));
    prev = it.E_value;
  }
  EXPECT_LE(rel(r.report.mu_estimate, r.report.mu_oc_estimate), 1e-8);
  if (r.trace.converged) EXPECT_LE(r.report.fixed_point_distance, 1e-6);
  EXPECT_LE(r.report.I_value, r.report.E_value * (1 + 1e-12));
}

INSTANTIATE_TEST_SUITE_P(Seeds, MinimizeProperties, ::testing::Range(0, 20));

TEST(Minimize, IndependentStartsReachTheSameInfimum) {
  std::mt19937_64 rng(31);
  auto pr = test::random_problem(rng, 10, 3);
  std::vector<double> mus, mu_ocs;
  for (int k = 0; k < 5; ++k) {
    const auto r = minimize(pr.form, pr.boundary, 3.0, test::random_state(rng, pr.boundary));
    ASSERT_TRUE(r.trace.converged) << r.trace.stop_reason;
    mus.push_back(r.report.mu_estimate);
    mu_ocs.push_back(r.report.mu_oc_estimate);
  }
  for (std::size_t i = 0; i < mus.size(); ++i) {
    for (std::size_t j = 0; j < mus.size(); ++j) {
      EXPECT_LE(rel(mus[i], mu_ocs[j]), 1e-6);
    }
  }
}

// Runs whose traces collapse onto a subset of boundary indices push the other
// entries to the floor; renormalizing must keep them admissible.
TEST(Minimize, FlooredTraceEntriesStayAdmissible) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    const auto inst = random_instance(rng, 2, 40, 12);
    MinimizeResult r;
    ASSERT_NO_THROW(r = minimize(inst.form, inst.boundary, inst.p, inst.state)) << "instance " << k;
    EXPECT_NO_THROW(require_admissible(inst.boundary, r.trace.final_state));
  }
}
