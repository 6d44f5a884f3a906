#include "yo/bubbles.hpp"

#include <cmath>
#include <numbers>

#include "yo/functionals.hpp"

namespace yo {

void BubbleParams::validate() const {
  if (!(pole.norm() >= 1.0 + 1e-6)) throw DomainError("bubble pole must lie outside the closed unit ball");
  if (!(scale > 0.0)) throw DomainError("bubble scale must be positive");
}

double bubble_value(const Point& x, const BubbleParams& params, int n) {
  const double a2 = params.pole.squaredNorm();
  const double r2 = (x - params.pole).squaredNorm();
  return params.scale * std::pow((a2 - 1.0) / r2, 0.5 * (n - 2));
}

PositiveField bubble_field(const SimplicialMesh& mesh, const BubbleParams& params, int n) {
  params.validate();
  Vector values(mesh.vertex_count());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values[i] = bubble_value(mesh.vertices[static_cast<std::size_t>(i)], params, n);
  }
  return PositiveField(std::move(values));
}

double bubble_constant(const BubbleParams& params, int n) {
  // With scale 1, B u_a = b_n u_a^{n/(n-2)} on the sphere; scaling by s
  // multiplies the constant by s^{1 - n/(n-2)}.
  const Exponents ex = Exponents::for_dimension(n);
  return ex.b_n * std::pow(params.scale, -2.0 / (n - 2));
}

BubbleReport verify_bubble(const SimplicialMesh& mesh, const EnergyForm& form, const BoundaryStructure& bs,
                           const BubbleParams& params, const ObstacleOptions& opts) {
  const int n = form.n();
  const Vector u = bubble_field(mesh, params, n).values();
  const double p = form.exponents().critical_p();

  BubbleReport rep;
  rep.residual = curvature_residual(mesh, form, bs, u);
  rep.c_expected = bubble_constant(params, n);
  rep.fixed_point_distance = is_fixed_point(form, bs, u, 0.0, opts).distance;
  rep.E_value = energy_quotient(form, bs, u, p);
  rep.I_value = control_quotient(form, bs, u, p, opts);
  return rep;
}

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: n must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double sharp_constant_for_area(int n, double sigma) {
  if (n < 3) throw DomainError("sharp_constant: n must be >= 3");
  if (!(sigma > 0.0)) throw DomainError("sharp_constant: sphere area must be positive");
  return 2.0 * (n - 1) * std::pow(sigma, 1.0 / (n - 1));
}

double sharp_constant(int n) { return sharp_constant_for_area(n, unit_sphere_area(n)); }

double obstacle_trace_ratio(const EnergyForm& form, const BoundaryStructure& bs, const Vector& u, double mu,
                            const ObstacleOptions& opts) {
  const Vector tu = obstacle_map(form, bs, u, opts).state;
  return std::sqrt(mu) * boundary_norm(bs, tu, bs.two_sharp()) / energy_norm(form, u);
}

}  // namespace yo
