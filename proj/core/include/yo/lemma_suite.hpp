#pragma once

// Randomized checks of the algebraic identities satisfied by the obstacle
// map T and the quotients E_p, I_p on synthetic SPD instances.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "yo/algebraic.hpp"

namespace yo {

struct LemmaCheck {
  std::string name;
  std::string statement;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  int samples = 0;
  /// When true the check passes if max_residual EXCEEDS the tolerance
  /// (a property that must fail somewhere).
  bool expect_violation = false;
  std::string first_error;
};

struct LemmaSuiteOptions {
  std::uint64_t seed = 7;
  int trials = 100;
  int max_dim = 40;
  int max_boundary = 12;
  int oracle_max_dim = 10;
  double tol = 1e-8;
  double oracle_tol = 1e-9;
};

struct RandomInstance {
  EnergyForm form;
  BoundaryStructure boundary;
  Vector state;  ///< admissible; may have interior zeros
  PositiveField factor;
  double p;      ///< uniform in [1, 2# - 1]
};

/// Random SPD instance: A = M M^T / d + delta I, n drawn from {3,..,6}.
RandomInstance random_instance(std::mt19937_64& rng, int min_dim, int max_dim, int max_boundary);

std::vector<LemmaCheck> run_lemma_suite(const LemmaSuiteOptions& opts);

}  // namespace yo
