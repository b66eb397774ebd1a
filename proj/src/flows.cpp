#include "curveflow/flows.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curveflow/elliptic.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/fourier.hpp"
#include "curveflow/projection.hpp"

namespace curveflow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PeriodicScalarField squared_curvature(const PeriodicVectorField& h) {
  PeriodicScalarField out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) { out[i] = norm2(h[i]); }
  return out;
}

PeriodicScalarField w_dense(const ClosedCurve& c) {
  const auto n        = static_cast<Eigen::Index>(c.size());
  const double len    = perimeter(c);
  const double lap    = (kTwoPi / len) * (kTwoPi / len);
  const auto h2       = squared_curvature(curvature_vector(c));
  const double inv_n  = 1.0 / static_cast<double>(n);

  // Circulant spectral second-derivative matrix from its first column.
  std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
  unit[0]             = 1.0;
  const auto column   = fourier::derivative(unit, 2);

  Eigen::MatrixXd a(n + 1, n + 1);
  Eigen::VectorXd rhs(n + 1);
  const double avg_h2 = grid_mean(h2.values);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto lag = static_cast<std::size_t>((i - j + n) % n);
      a(i, j)        = -lap * column[lag] - inv_n * h2[static_cast<std::size_t>(j)];
    }
    a(i, i) += h2[static_cast<std::size_t>(i)];
    a(i, n) = 1.0;  // multiplier column; the range of the operator has zero mean
    a(n, i) = inv_n;
    rhs(i)  = h2[static_cast<std::size_t>(i)] - avg_h2;
  }
  a(n, n) = 0.0;
  rhs(n)  = 0.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-13)) { throw NumericalAbort("solve_w: collocation system is singular"); }
  const Eigen::VectorXd x = lu.solve(rhs);

  PeriodicScalarField w(c.size());
  for (Eigen::Index i = 0; i < n; ++i) { w[static_cast<std::size_t>(i)] = x(i); }
  return w;
}

PeriodicVectorField ucmcf_from_w(const ClosedCurve& c, const PeriodicScalarField& w) {
  const auto h    = curvature_vector(c);
  const auto grad = surface_gradient(c, w);
  PeriodicVectorField v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) { v[i] = (1.0 - w[i]) * h[i] - grad[i]; }
  return v;
}

PeriodicVectorField stage_velocity(const ClosedCurve& c, FlowKind kind) {
  switch (kind) {
    case FlowKind::MCF: return curvature_vector(c);
    case FlowKind::ModifiedMCF: return detail::modified_mcf_field_unchecked(c).field;
    case FlowKind::UCMCF: return ucmcf_from_w(c, w_dense(c));
  }
  throw InvalidInput("unknown flow kind");
}

ClosedCurve advance(const ClosedCurve& c, const PeriodicVectorField& v, double dt) {
  auto pts = c.points();
  for (std::size_t i = 0; i < pts.size(); ++i) { pts[i] += dt * v[i]; }
  return ClosedCurve(std::move(pts));
}

double min_spacing(const ClosedCurve& c) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) { m = std::min(m, norm(c[(i + 1) % c.size()] - c[i])); }
  return m;
}

// Removes the Nyquist mode of both coordinates. On an even grid that mode is
// invisible to first derivatives, so nothing else controls odd-even
// decoupling of the markers.
// Exponential filter exp(-36 (k / (n/2))^36) on the node coordinates. It
// leaves the lower two thirds of the spectrum intact to roundoff and damps
// the aliased top modes that otherwise grow under the nonlinear stepping.
ClosedCurve filter_high_modes(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = pts[i].x;
    y[i] = pts[i].y;
  }
  auto fx           = fourier::forward(x);
  auto fy           = fourier::forward(y);
  const double half = 0.5 * static_cast<double>(n);
  for (std::size_t k = 0; k < fx.size(); ++k) {
    const double w = std::exp(-36.0 * std::pow(static_cast<double>(k) / half, 36));
    fx[k] *= w;
    fy[k] *= w;
  }
  if (n % 2 == 0) {
    fx.back() = 0.0;
    fy.back() = 0.0;
  }
  x = fourier::inverse(fx, n);
  y = fourier::inverse(fy, n);
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) { out[i] = {x[i], y[i]}; }
  return ClosedCurve(std::move(out));
}

StepDiagnostics diagnose(const ClosedCurve& c, double t) {
  return {t, perimeter(c), enclosed_area(c), max_abs_curvature(c), speed_cv(c)};
}

}  // namespace

std::string_view to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::MCF: return "mcf";
    case FlowKind::ModifiedMCF: return "modified";
    case FlowKind::UCMCF: return "ucmcf";
  }
  return "unknown";
}

FlowKind parse_flow_kind(std::string_view name) {
  if (name == "mcf") { return FlowKind::MCF; }
  if (name == "modified" || name == "modified-mcf") { return FlowKind::ModifiedMCF; }
  if (name == "ucmcf") { return FlowKind::UCMCF; }
  throw InvalidInput("unknown flow kind '" + std::string(name) + "'");
}

PeriodicScalarField solve_w(const ClosedCurve& c) {
  require_constant_speed(c, "solve_w");
  return w_dense(c);
}

PeriodicScalarField solve_w_fixed_point(const ClosedCurve& c, double tolerance, int max_iterations) {
  require_constant_speed(c, "solve_w_fixed_point");
  const std::size_t n = c.size();
  const double len    = perimeter(c);
  const auto h2       = squared_curvature(curvature_vector(c));

  // The iteration map is -(-Delta)^{-1} P0 |H|^2 plus a constant; its spectrum
  // lies in [-rho, 0], so relaxation by 2 / (2 + rho) contracts.
  const double rho   = (len / kTwoPi) * (len / kTwoPi) * sup_norm(h2);
  const double omega = 2.0 / (2.0 + rho);

  PeriodicScalarField w(n, 0.0);
  PeriodicScalarField rhs(n);
  for (int it = 0; it < max_iterations; ++it) {
    double avg = 0.0;
    for (std::size_t i = 0; i < n; ++i) { avg += (w[i] - 1.0) * h2[i]; }
    avg /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) { rhs[i] = avg - (w[i] - 1.0) * h2[i]; }
    const auto next = detail::solve_curve_poisson_unchecked(len, rhs);
    double change   = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double updated = (1.0 - omega) * w[i] + omega * next[i];
      change               = std::max(change, std::abs(updated - w[i]));
      w[i]                 = updated;
    }
    if (change <= tolerance * std::max(1.0, sup_norm(w))) { return w; }
  }
  throw NumericalAbort("solve_w_fixed_point: no convergence after " + std::to_string(max_iterations) +
                       " iterations");
}

double w_residual(const ClosedCurve& c, const PeriodicScalarField& w) {
  require_same_grid(c.size(), w.size(), "w_residual");
  const std::size_t n = c.size();
  const double len    = perimeter(c);
  const double lap    = (kTwoPi / len) * (kTwoPi / len);
  const auto h2       = squared_curvature(curvature_vector(c));
  const auto w2       = periodic_derivative(w, 2);
  double avg          = 0.0;
  for (std::size_t i = 0; i < n; ++i) { avg += (w[i] - 1.0) * h2[i]; }
  avg /= static_cast<double>(n);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lhs = -lap * w2[i];
    const double rhs = avg - (w[i] - 1.0) * h2[i];
    r                = std::max(r, std::abs(lhs - rhs));
  }
  return r;
}

PeriodicVectorField ucmcf_velocity(const ClosedCurve& c) { return ucmcf_from_w(c, solve_w(c)); }

PeriodicVectorField log_perimeter_gradient(const ClosedCurve& c) {
  auto v = ucmcf_velocity(c);
  for (auto& x : v.values) { x = -x; }
  return v;
}

PeriodicVectorField velocity(const ClosedCurve& c, FlowKind kind) {
  switch (kind) {
    case FlowKind::MCF: return curvature_vector(c);
    case FlowKind::ModifiedMCF: return modified_mcf_field(c).field;
    case FlowKind::UCMCF: return ucmcf_velocity(c);
  }
  throw InvalidInput("unknown flow kind");
}

double max_stable_dt(const ClosedCurve& c, double cfl) {
  const double h     = min_spacing(c);
  const double kappa = max_abs_curvature(c);
  return cfl * h * h / std::max(1.0, kappa * kappa);
}

Trajectory evolve(const ClosedCurve& c0, FlowKind kind, double t_end, double dt, std::size_t reparam_every,
                  const EvolveOptions& options) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) { throw InvalidInput("evolve: need dt > 0 and t_end >= 0"); }
  if (!(options.cfl > 0.0)) { throw InvalidInput("evolve: cfl must be positive"); }

  ClosedCurve c      = reparametrize_constant_speed(c0);
  const double limit = max_stable_dt(c, options.cfl);
  if (dt > limit) {
    throw NumericalAbort("CFL violation: dt = " + std::to_string(dt) + " exceeds limit " + std::to_string(limit));
  }

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.curves.push_back(c);
  traj.diagnostics.push_back(diagnose(c, 0.0));

  // Step count is fixed up front so that t_end is hit exactly.
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  double t         = 0.0;
  try {
    for (std::size_t step = 1; step <= steps; ++step) {
      const double tau = std::min(dt, t_end - t);
      const auto k1    = stage_velocity(c, kind);
      const auto k2    = stage_velocity(advance(c, k1, 0.5 * tau), kind);
      const auto k3    = stage_velocity(advance(c, k2, 0.5 * tau), kind);
      const auto k4    = stage_velocity(advance(c, k3, tau), kind);
      auto pts         = c.points();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] += (tau / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      c = filter_high_modes(pts);
      t = step == steps ? t_end : t + tau;

      if (reparam_every > 0 && step % reparam_every == 0) { c = reparametrize_constant_speed(c); }

      const auto diag = diagnose(c, t);
      if (!std::isfinite(diag.max_kappa) || diag.max_kappa * min_spacing(c) > 1.0) {
        throw NumericalAbort("resolution exhausted at t = " + std::to_string(t) +
                             " (max|kappa| * h > 1)");
      }
      traj.times.push_back(t);
      traj.curves.push_back(c);
      traj.diagnostics.push_back(diag);
    }
  } catch (const InvalidInput& e) {
    throw NumericalAbort(std::string("flow broke down: ") + e.what());
  }
  return traj;
}

}  // namespace curveflow
