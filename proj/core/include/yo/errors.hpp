#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace yo {

/// Malformed input: dimension mismatch, bad indices, unparsable files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value lies outside the mathematical domain of an operation
/// (nonpositive conformal factor, q < 2, zero boundary trace, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The standing positivity hypothesis on the energy form does not hold,
/// or the instance is too ill-conditioned to be solved reliably.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped without meeting its tolerance. Carries the
/// best iterate it found and the residual there.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, Eigen::VectorXd best_iterate, double residual)
      : std::runtime_error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}

  const Eigen::VectorXd& best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

 private:
  Eigen::VectorXd best_iterate_;
  double residual_;
};

}  // namespace yo
