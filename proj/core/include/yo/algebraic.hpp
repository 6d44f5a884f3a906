#pragma once

// Discrete energy pairings, boundary traces and exact conformal pullback.
// Nothing in this header knows about meshes: a form is any SPD matrix and a
// boundary is any nonempty index set with positive lumped weights.

#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "yo/errors.hpp"

namespace yo {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Boundary entries of an admissible state must be at least this large.
inline constexpr double kBoundaryFloor = 1e-12;

/// Dimension-dependent constants of the conformal Laplacian / Robin pair.
struct Exponents {
  int n = 3;
  double a_n = 8.0;        ///< 4(n-1)/(n-2), gradient coefficient
  double b_n = 4.0;        ///< 2(n-1), mean-curvature coefficient
  double two_sharp = 4.0;  ///< 2(n-1)/(n-2), critical trace exponent
  double two_star = 6.0;   ///< 2n/(n-2), critical volume exponent

  static Exponents for_dimension(int n);

  /// p = 2# - 1 = n/(n-2).
  double critical_p() const { return static_cast<double>(n) / (n - 2); }
};

/// Symmetric positive-definite pairing <u, v> = u^T A v.
///
/// Construction checks exact symmetry and runs a sparse LDL^T factorization;
/// a nonpositive or negligible pivot raises HypothesisError, which is the
/// discrete face of a nonpositive conformal invariant.
class EnergyForm {
 public:
  EnergyForm(SparseMatrix matrix, int n = 3);

  static EnergyForm from_dense(const Eigen::MatrixXd& matrix, int n = 3);

  Eigen::Index dim() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }
  const Exponents& exponents() const { return exponents_; }
  int n() const { return exponents_.n; }

  /// max/min pivot of the LDL^T factorization; a cheap lower bound on the
  /// spectral condition number.
  double pivot_ratio() const { return pivot_ratio_; }

 private:
  SparseMatrix matrix_;
  Exponents exponents_;
  double pivot_ratio_ = 1.0;
};

/// Trace data: which dofs lie on the boundary and their lumped measure.
class BoundaryStructure {
 public:
  BoundaryStructure(Eigen::Index dim, std::vector<Eigen::Index> indices, Vector weights, int n = 3);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Eigen::Index>& indices() const { return indices_; }
  const Vector& weights() const { return weights_; }
  const Exponents& exponents() const { return exponents_; }
  double two_sharp() const { return exponents_.two_sharp; }
  double two_star() const { return exponents_.two_star; }

  bool is_boundary(Eigen::Index i) const { return mask_[static_cast<std::size_t>(i)]; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }

  /// Restriction of u to the boundary indices, in index order.
  Vector trace(const Vector& u) const;

 private:
  Eigen::Index dim_;
  std::vector<Eigen::Index> indices_;
  std::vector<bool> mask_;
  Vector weights_;
  Exponents exponents_;
};

/// A strictly positive nodal field: a conformal factor w.
class PositiveField {
 public:
  explicit PositiveField(Vector values);

  static PositiveField ones(Eigen::Index dim) { return PositiveField(Vector::Ones(dim)); }

  const Vector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

  PositiveField reciprocal() const { return PositiveField(values_.cwiseInverse()); }

 private:
  Vector values_;
};

double pair(const EnergyForm& form, const Vector& u, const Vector& v);

/// Energy norm ||u||_A.
double energy_norm(const EnergyForm& form, const Vector& u);

/// D_w A D_w: the form of the conformal metric g_w, so that
/// pair(pullback_form(A, w), u, u) == pair(A, w*u, w*u).
EnergyForm pullback_form(const EnergyForm& form, const PositiveField& w);

/// (sum_j m_j w_j^{2#} |u_j|^q)^{1/q} over boundary indices; w omitted when absent.
double boundary_norm(const BoundaryStructure& bs, const Vector& u, double q,
                     const std::optional<PositiveField>& w = std::nullopt);

/// Entrywise product w*u.
Vector push_field(const PositiveField& w, const Vector& u);

/// Throws DomainError unless u >= 0 everywhere and u >= kBoundaryFloor on the boundary.
void require_admissible(const BoundaryStructure& bs, const Vector& u);

/// Indices where an admissible state vanishes in the interior.
std::vector<Eigen::Index> interior_zeros(const BoundaryStructure& bs, const Vector& u);

}  // namespace yo
