#pragma once

// Projection of velocity fields on a curve onto the coherent tangent space:
// fields whose tangential divergence is constant along the curve. Flows of
// coherent fields transport the normalized length measure, so a constant-speed
// parametrization stays constant-speed.

#include "curveflow/geometry.hpp"

namespace curveflow {

// div_Gamma V minus its mean with respect to the normalized length measure.
PeriodicScalarField ndiv(const ClosedCurve& c, const PeriodicVectorField& v);

struct CoherentProjection {
  PeriodicVectorField field;      // P(V) = V_perp + (dU/ds) T
  PeriodicScalarField potential;  // U, zero mean
};

// Requires a constant-speed curve. U solves
//   -Delta_Gamma U = avg(V . H) - V . H,   avg(U) = 0.
CoherentProjection coherent_projection(const ClosedCurve& c, const PeriodicVectorField& v);

struct ModifiedMcfField {
  PeriodicVectorField field;      // P(H) = H + (dSigma/ds) T
  PeriodicScalarField potential;  // Sigma, zero mean
};

// Requires a constant-speed curve. Sigma solves
//   -Delta_Gamma Sigma = avg(|H|^2) - |H|^2,   avg(Sigma) = 0.
ModifiedMcfField modified_mcf_field(const ClosedCurve& c);

// Arclength derivative of a scalar field times the unit tangent.
PeriodicVectorField surface_gradient(const ClosedCurve& c, const PeriodicScalarField& f);

namespace detail {
// Unchecked variants for time-stepper stages.
CoherentProjection coherent_projection_unchecked(const ClosedCurve& c, const PeriodicVectorField& v);
ModifiedMcfField modified_mcf_field_unchecked(const ClosedCurve& c);
}  // namespace detail

}  // namespace curveflow
