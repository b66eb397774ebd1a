#pragma once

// Marker-transport time stepping for mean curvature flow (MCF), its
// tangentially modified form P(H), and the uniformly compressing MCF (UCMCF),
// the gradient flow of log-perimeter in the normalized coherent metric.

#include <cstddef>
#include <string_view>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

enum class FlowKind { MCF, ModifiedMCF, UCMCF };

std::string_view to_string(FlowKind kind);
// Accepts "mcf", "modified" / "modified-mcf", "ucmcf". Throws InvalidInput.
FlowKind parse_flow_kind(std::string_view name);

// W with avg(W) = 0 solving
//   -Delta_Gamma W = avg((W - 1)|H|^2) - (W - 1)|H|^2
// as one bordered dense collocation system. Requires a constant-speed curve.
PeriodicScalarField solve_w(const ClosedCurve& c);

// Same problem by relaxed fixed-point iteration of the zero-mean Poisson
// solve. Independent of the dense system; used as its cross-check.
PeriodicScalarField solve_w_fixed_point(const ClosedCurve& c, double tolerance = 1e-12, int max_iterations = 20000);

// Residual sup-norm of the W-equation, evaluated spectrally.
double w_residual(const ClosedCurve& c, const PeriodicScalarField& w);

// (1 - W) H - grad_Gamma W, the negative coherent gradient of log-perimeter.
PeriodicVectorField ucmcf_velocity(const ClosedCurve& c);

// The coherent gradient of log-perimeter, (W - 1) H + grad_Gamma W.
PeriodicVectorField log_perimeter_gradient(const ClosedCurve& c);

PeriodicVectorField velocity(const ClosedCurve& c, FlowKind kind);

struct StepDiagnostics {
  double t         = 0.0;
  double perimeter = 0.0;
  double area      = 0.0;
  double max_kappa = 0.0;
  double speed_cv  = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ClosedCurve> curves;
  std::vector<StepDiagnostics> diagnostics;
};

struct EvolveOptions {
  double cfl = 0.2;
};

// Largest admissible step: cfl * h^2 / max(1, max|kappa|^2), h the minimum
// node spacing.
double max_stable_dt(const ClosedCurve& c, double cfl);

// Explicit RK4 marker transport from the constant-speed reparametrization of
// c0. reparam_every = 0 disables resampling during the run.
// Throws NumericalAbort on a CFL violation or when max|kappa| * h exceeds 1.
Trajectory evolve(const ClosedCurve& c0, FlowKind kind, double t_end, double dt, std::size_t reparam_every,
                  const EvolveOptions& options = {});

}  // namespace curveflow
