#pragma once

// Zero-mean periodic Poisson problem -u'' = f on [0, 2pi], solved two ways:
// diagonally in Fourier space and by quadrature against the explicit Green's
// kernel
//
//   G(theta, xi) = (xi - theta)^2 / (4 pi) + min(xi, theta) - (xi + theta) / 2 + pi / 3,
//
// the zero-mean fundamental solution of -d^2/dtheta^2 G = delta_xi - 1/(2 pi).

#include "curveflow/geometry.hpp"

namespace curveflow {

// Right-hand sides whose grid mean exceeds this multiple of their sup-norm
// violate the solvability condition and are rejected.
inline constexpr double kMeanCompatibilityTolerance = 1e-10;

// Constant-speed tolerance (speed coefficient of variation) accepted by the
// solvers that assume Delta_Gamma = (2 pi / l)^2 d^2/dtheta^2.
inline constexpr double kConstantSpeedTolerance = 1e-6;

// G(theta, xi) = (xi - theta)^2 / 4pi + min(xi, theta) - (xi + theta) / 2 + pi/3.
// Its theta-integral is pi^2 / 3 for every xi, so the kernel with zero
// theta-mean is green_eval - pi/6. Both throw InvalidInput when theta or xi
// lies outside [0, 2 pi].
double green_eval(double theta, double xi);
double green_eval_zero_mean(double theta, double xi);

PeriodicScalarField solve_poisson_spectral(const PeriodicScalarField& rhs);
PeriodicScalarField solve_poisson_kernel(const PeriodicScalarField& rhs);

// -Delta_Gamma U = rhs with zero mean on a constant-speed curve, i.e.
// (l / 2 pi)^2 times the spectral solution.
PeriodicScalarField solve_curve_poisson(const ClosedCurve& c, const PeriodicScalarField& rhs);

// Throws InvalidInput unless the speed coefficient of variation is within
// kConstantSpeedTolerance.
void require_constant_speed(const ClosedCurve& c, const char* what);

namespace detail {
// Same as solve_curve_poisson without the constant-speed and mean checks; the
// rhs mean is removed before solving. Used inside time steppers whose
// intermediate stages drift from exact uniformity by O(dt^2).
PeriodicScalarField solve_curve_poisson_unchecked(double length, const PeriodicScalarField& rhs);
}  // namespace detail

}  // namespace curveflow
