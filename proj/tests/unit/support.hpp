#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "yo/algebraic.hpp"

namespace yo::test {

// The 2x2 fixture: A = [[2,-1],[-1,2]], boundary = {1} with unit weight.
inline EnergyForm tiny_form() {
  Eigen::MatrixXd a(2, 2);
  a << 2, -1, -1, 2;
  return EnergyForm::from_dense(a, 3);
}

inline BoundaryStructure tiny_boundary() { return BoundaryStructure(2, {1}, Vector::Ones(1), 3); }

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Random SPD problem, independent of the generator used by the lemma suite:
// a weighted path/graph Laplacian plus a positive diagonal shift.
struct Problem {
  EnergyForm form;
  BoundaryStructure boundary;
};

inline Problem random_problem(std::mt19937_64& rng, int dim, int nb, int n = 3) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (j == i + 1 || U(rng) < 0.3) {
        const double w = 0.2 + U(rng);
        a(i, i) += w;
        a(j, j) += w;
        a(i, j) -= w;
        a(j, i) -= w;
      }
    }
    a(i, i) += 0.05 + 0.5 * U(rng);
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(static_cast<std::size_t>(nb));
  Vector w(nb);
  for (int k = 0; k < nb; ++k) w[k] = 0.5 + U(rng);
  return {EnergyForm::from_dense(a, n), BoundaryStructure(dim, idx, w, n)};
}

// Admissible state: boundary in [0.1, 2], interior in [0, 2] with some zeros.
inline Vector random_state(std::mt19937_64& rng, const BoundaryStructure& bs) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Vector u(bs.dim());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (bs.is_boundary(i)) u[i] = 0.1 + 1.9 * U(rng);
    else u[i] = U(rng) < 0.25 ? 0.0 : 2.0 * U(rng);
  }
  return u;
}

inline PositiveField random_factor(std::mt19937_64& rng, Eigen::Index dim) {
  std::uniform_real_distribution<double> U(0.3, 3.0);
  Vector w(dim);
  for (Eigen::Index i = 0; i < dim; ++i) w[i] = U(rng);
  return PositiveField(w);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace yo::test
