#include "yo/mesh.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace yo {

MetricData MetricData::flat_ball(const SimplicialMesh& mesh) {
  MetricData m;
  m.R_field = Vector::Zero(mesh.vertex_count());
  m.H_field = Vector::Ones(static_cast<Eigen::Index>(mesh.boundary_vertices.size()));
  return m;
}

AssembledProblem assemble(const SimplicialMesh& mesh, const MetricData& metric, int n) {
  const Exponents ex = Exponents::for_dimension(n);
  const Eigen::Index nv = mesh.vertex_count();
  const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices.size());
  if (metric.R_field.size() != nv) throw InputError("assemble: R_field must have one value per vertex");
  if (metric.H_field.size() != nb) throw InputError("assemble: H_field must have one value per boundary vertex");
  if (metric.conformal_w && metric.conformal_w->size() != nv) {
    throw InputError("assemble: conformal factor must have one value per vertex");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.cells.size() * 16 + static_cast<std::size_t>(nv));
  Vector volume_mass = Vector::Zero(nv);

  for (const auto& c : mesh.cells) {
    Eigen::Matrix3d jac;
    const Point& p0 = mesh.vertices[static_cast<std::size_t>(c[0])];
    for (int k = 0; k < 3; ++k) jac.col(k) = mesh.vertices[static_cast<std::size_t>(c[k + 1])] - p0;
    const double vol = jac.determinant() / 6.0;
    // Rows of J^{-1} are the gradients of barycentric coordinates 1..3.
    const Eigen::Matrix3d inv = jac.inverse();
    std::array<Point, 4> grad;
    grad[1] = inv.row(0).transpose();
    grad[2] = inv.row(1).transpose();
    grad[3] = inv.row(2).transpose();
    grad[0] = -(grad[1] + grad[2] + grad[3]);
    for (std::size_t i = 0; i < 4; ++i) {
      volume_mass[c[i]] += vol / 4.0;
      for (std::size_t j = 0; j < 4; ++j) {
        triplets.emplace_back(c[i], c[j], ex.a_n * vol * grad[i].dot(grad[j]));
      }
    }
  }
  for (Eigen::Index i = 0; i < nv; ++i) {
    if (metric.R_field[i] != 0.0) triplets.emplace_back(i, i, metric.R_field[i] * volume_mass[i]);
  }

  Vector face_mass = Vector::Zero(nv);
  for (const auto& f : mesh.boundary_faces) {
    const Point& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Point& b = mesh.vertices[static_cast<std::size_t>(f[1])];
    const Point& c = mesh.vertices[static_cast<std::size_t>(f[2])];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    for (auto i : f) face_mass[i] += area / 3.0;
  }
  Vector weights(nb);
  for (Eigen::Index k = 0; k < nb; ++k) {
    const auto i = mesh.boundary_vertices[static_cast<std::size_t>(k)];
    weights[k] = face_mass[i];
    triplets.emplace_back(i, i, ex.b_n * metric.H_field[k] * face_mass[i]);
  }

  SparseMatrix a(nv, nv);
  a.setFromTriplets(triplets.begin(), triplets.end());
  SparseMatrix at = a.transpose();
  a = 0.5 * (a + at);

  EnergyForm base(std::move(a), n);
  if (!metric.conformal_w) {
    return {std::move(base), BoundaryStructure(nv, mesh.boundary_vertices, std::move(weights), n)};
  }
  const PositiveField& w = *metric.conformal_w;
  for (Eigen::Index k = 0; k < nb; ++k) {
    weights[k] *= std::pow(w[mesh.boundary_vertices[static_cast<std::size_t>(k)]], ex.two_sharp);
  }
  return {pullback_form(base, w), BoundaryStructure(nv, mesh.boundary_vertices, std::move(weights), n)};
}

CurvatureResidual curvature_residual(const SimplicialMesh& mesh, const EnergyForm& form,
                                     const BoundaryStructure& bs, const Vector& u) {
  if (u.size() != mesh.vertex_count() || form.dim() != u.size()) {
    throw InputError("curvature_residual: dimension mismatch");
  }
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) throw DomainError("curvature_residual: state must be strictly positive");
  }
  const Vector au = form.matrix() * u;
  double interior = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!bs.is_boundary(i)) interior += au[i] * au[i];
  }
  const double total = au.norm();

  CurvatureResidual out;
  out.r_interior = total > 0.0 ? std::sqrt(interior) / total : 0.0;
  const BoundaryFit fit = fit_boundary_constant(form, bs, u, form.exponents().critical_p());
  out.c_est = fit.c;
  out.r_boundary = fit.misfit;
  return out;
}

}  // namespace yo
