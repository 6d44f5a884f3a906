#include "yo/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>

namespace yo {

namespace {

void require_size(Eigen::Index expected, Eigen::Index got, const char* what) {
  if (expected != got) {
    std::ostringstream os;
    os << what << ": dimension mismatch (expected " << expected << ", got " << got << ")";
    throw InputError(os.str());
  }
}

}  // namespace

Exponents Exponents::for_dimension(int n) {
  if (n < 3) throw DomainError("manifold dimension n must be >= 3");
  Exponents e;
  e.n = n;
  const double nm1 = n - 1;
  const double nm2 = n - 2;
  e.a_n = 4.0 * nm1 / nm2;
  e.b_n = 2.0 * nm1;
  e.two_sharp = 2.0 * nm1 / nm2;
  e.two_star = 2.0 * n / nm2;
  return e;
}

EnergyForm::EnergyForm(SparseMatrix matrix, int n)
    : matrix_(std::move(matrix)), exponents_(Exponents::for_dimension(n)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw InputError("energy form must be a nonempty square matrix");
  }
  matrix_.makeCompressed();
  SparseMatrix transposed = matrix_.transpose();
  if ((matrix_ - transposed).norm() != 0.0) {
    throw InputError("energy form matrix is not exactly symmetric");
  }

  Eigen::SimplicialLDLT<SparseMatrix> ldlt(matrix_);
  if (ldlt.info() != Eigen::Success) {
    throw HypothesisError("factorization failed: form is not positive definite (mu(M,dM,[g]) > 0 violated)");
  }
  const Vector d = ldlt.vectorD();
  const double dmax = d.maxCoeff();
  const double dmin = d.minCoeff();
  if (!(dmax > 0.0) || !(dmin > 1e-14 * dmax)) {
    throw HypothesisError("form is singular or indefinite (mu(M,dM,[g]) > 0 violated)");
  }
  pivot_ratio_ = dmax / dmin;
}

EnergyForm EnergyForm::from_dense(const Eigen::MatrixXd& matrix, int n) {
  const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  return EnergyForm(sym.sparseView(), n);
}

BoundaryStructure::BoundaryStructure(Eigen::Index dim, std::vector<Eigen::Index> indices,
                                     Vector weights, int n)
    : dim_(dim), indices_(std::move(indices)), weights_(std::move(weights)),
      exponents_(Exponents::for_dimension(n)) {
  if (indices_.empty()) throw InputError("boundary index set must be nonempty");
  if (static_cast<Eigen::Index>(indices_.size()) != weights_.size()) {
    throw InputError("boundary weights must match boundary indices");
  }
  // Keep (index, weight) pairs sorted by index.
  std::vector<std::size_t> order(indices_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return indices_[a] < indices_[b]; });
  std::vector<Eigen::Index> sorted(indices_.size());
  Vector sorted_w(weights_.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted[k] = indices_[order[k]];
    sorted_w[static_cast<Eigen::Index>(k)] = weights_[static_cast<Eigen::Index>(order[k])];
  }
  indices_ = std::move(sorted);
  weights_ = std::move(sorted_w);

  mask_.assign(static_cast<std::size_t>(dim_), false);
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    const auto i = indices_[k];
    if (i < 0 || i >= dim_) throw InputError("boundary index out of range");
    if (mask_[static_cast<std::size_t>(i)]) throw InputError("duplicate boundary index");
    mask_[static_cast<std::size_t>(i)] = true;
    if (!(weights_[static_cast<Eigen::Index>(k)] > 0.0)) {
      throw DomainError("boundary weights must be strictly positive");
    }
  }
}

Vector BoundaryStructure::trace(const Vector& u) const {
  require_size(dim_, u.size(), "trace");
  Vector t(size());
  for (std::size_t k = 0; k < indices_.size(); ++k) t[static_cast<Eigen::Index>(k)] = u[indices_[k]];
  return t;
}

PositiveField::PositiveField(Vector values) : values_(std::move(values)) {
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("conformal factor must be strictly positive and finite");
    }
  }
}

double pair(const EnergyForm& form, const Vector& u, const Vector& v) {
  require_size(form.dim(), u.size(), "pair");
  require_size(form.dim(), v.size(), "pair");
  return u.dot(form.matrix() * v);
}

double energy_norm(const EnergyForm& form, const Vector& u) {
  return std::sqrt(std::max(0.0, pair(form, u, u)));
}

EnergyForm pullback_form(const EnergyForm& form, const PositiveField& w) {
  require_size(form.dim(), w.size(), "pullback_form");
  SparseMatrix scaled = form.matrix();
  for (Eigen::Index col = 0; col < scaled.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(scaled, col); it; ++it) {
      // (w_i a_ij) w_j with the same association for (i,j) and (j,i) keeps exact symmetry.
      const double wi = w[it.row()];
      const double wj = w[it.col()];
      it.valueRef() = wi < wj ? (wi * it.value()) * wj : (wj * it.value()) * wi;
    }
  }
  return EnergyForm(std::move(scaled), form.n());
}

double boundary_norm(const BoundaryStructure& bs, const Vector& u, double q,
                     const std::optional<PositiveField>& w) {
  if (!(q >= 2.0)) throw DomainError("boundary_norm requires q >= 2");
  require_size(bs.dim(), u.size(), "boundary_norm");
  if (w) require_size(bs.dim(), w->size(), "boundary_norm");
  const double two_sharp = bs.two_sharp();
  double sum = 0.0;
  for (std::size_t k = 0; k < bs.indices().size(); ++k) {
    const auto i = bs.indices()[k];
    double term = bs.weights()[static_cast<Eigen::Index>(k)] * std::pow(std::abs(u[i]), q);
    if (w) term *= std::pow((*w)[i], two_sharp);
    sum += term;
  }
  return std::pow(sum, 1.0 / q);
}

Vector push_field(const PositiveField& w, const Vector& u) {
  require_size(w.size(), u.size(), "push_field");
  return w.values().cwiseProduct(u);
}

void require_admissible(const BoundaryStructure& bs, const Vector& u) {
  require_size(bs.dim(), u.size(), "admissible state");
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) throw DomainError("state has a non-finite entry");
    if (bs.is_boundary(i)) {
      if (u[i] < kBoundaryFloor) throw DomainError("state must be positive on the boundary");
    } else if (u[i] < 0.0) {
      throw DomainError("state must be nonnegative in the interior");
    }
  }
}

std::vector<Eigen::Index> interior_zeros(const BoundaryStructure& bs, const Vector& u) {
  std::vector<Eigen::Index> zeros;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!bs.is_boundary(i) && u[i] == 0.0) zeros.push_back(i);
  }
  return zeros;
}

}  // namespace yo
