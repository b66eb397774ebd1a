#include "curveflow/projection.hpp"

#include "curveflow/elliptic.hpp"

namespace curveflow {
namespace {

// Shared body of the projection: U from the normal pairing with H, then
// V_perp + grad U.
CoherentProjection project(const ClosedCurve& c, const PeriodicVectorField& v) {
  const auto d      = differentiate(c);
  const auto h      = curvature_vector(c);
  const double len  = perimeter(c);
  const std::size_t n = c.size();

  PeriodicScalarField vh = dot(v, h);
  const double avg       = integrate_over_curve(c, vh, true);
  PeriodicScalarField rhs(n);
  for (std::size_t i = 0; i < n; ++i) { rhs[i] = avg - vh[i]; }

  CoherentProjection out;
  out.potential = detail::solve_curve_poisson_unchecked(len, rhs);
  const auto du = periodic_derivative(out.potential, 1);
  out.field     = PeriodicVectorField(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 t      = d.d1[i] / d.speed[i];
    const Vec2 normal = perp(t);
    out.field[i]      = dot(v[i], normal) * normal + (du[i] / d.speed[i]) * t;
  }
  return out;
}

ModifiedMcfField modified(const ClosedCurve& c) {
  const auto h     = curvature_vector(c);
  const double len = perimeter(c);
  const std::size_t n = c.size();

  PeriodicScalarField h2(n);
  for (std::size_t i = 0; i < n; ++i) { h2[i] = norm2(h[i]); }
  const double avg = integrate_over_curve(c, h2, true);
  PeriodicScalarField rhs(n);
  for (std::size_t i = 0; i < n; ++i) { rhs[i] = avg - h2[i]; }

  ModifiedMcfField out;
  out.potential = detail::solve_curve_poisson_unchecked(len, rhs);
  out.field     = h + surface_gradient(c, out.potential);
  return out;
}

}  // namespace

PeriodicScalarField ndiv(const ClosedCurve& c, const PeriodicVectorField& v) {
  auto div          = tangential_divergence(c, v);
  const double mean = integrate_over_curve(c, div, true);
  for (auto& x : div.values) { x -= mean; }
  return div;
}

CoherentProjection coherent_projection(const ClosedCurve& c, const PeriodicVectorField& v) {
  require_same_grid(c.size(), v.size(), "coherent_projection");
  require_constant_speed(c, "coherent_projection");
  return project(c, v);
}

ModifiedMcfField modified_mcf_field(const ClosedCurve& c) {
  require_constant_speed(c, "modified_mcf_field");
  return modified(c);
}

PeriodicVectorField surface_gradient(const ClosedCurve& c, const PeriodicScalarField& f) {
  require_same_grid(c.size(), f.size(), "surface_gradient");
  const auto d1 = periodic_derivative(as_field(c), 1);
  const auto df = periodic_derivative(f, 1);
  PeriodicVectorField out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double sp = norm(d1[i]);
    out[i]          = (df[i] / (sp * sp)) * d1[i];
  }
  return out;
}

namespace detail {

CoherentProjection coherent_projection_unchecked(const ClosedCurve& c, const PeriodicVectorField& v) {
  return project(c, v);
}

ModifiedMcfField modified_mcf_field_unchecked(const ClosedCurve& c) { return modified(c); }

}  // namespace detail
}  // namespace curveflow
