#include "curveflow/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/fourier.hpp"

namespace curveflow {
namespace {

constexpr double kPi    = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

void require_compatible(const PeriodicScalarField& rhs, const char* what) {
  if (rhs.size() == 0) { throw InvalidInput(std::string(what) + ": empty right-hand side"); }
  const double mean  = grid_mean(rhs.values);
  const double scale = sup_norm(rhs);
  if (std::abs(mean) > kMeanCompatibilityTolerance * scale) {
    throw InvalidInput(std::string(what) + ": right-hand side has nonzero mean " + std::to_string(mean) +
                       " (periodic problem is unsolvable)");
  }
}

PeriodicScalarField spectral_solve(const PeriodicScalarField& rhs) {
  const std::size_t n = rhs.size();
  auto spec           = fourier::forward(rhs.values);
  spec[0]             = 0.0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double kk = static_cast<double>(k);
    spec[k] /= kk * kk;
  }
  return PeriodicScalarField(fourier::inverse(spec, n));
}

}  // namespace

double green_eval(double theta, double xi) {
  if (!(theta >= 0.0 && theta <= kTwoPi) || !(xi >= 0.0 && xi <= kTwoPi)) {
    throw InvalidInput("green_eval: arguments must lie in [0, 2pi]");
  }
  const double d = xi - theta;
  return d * d / (4.0 * kPi) + std::min(xi, theta) - 0.5 * (xi + theta) + kPi / 3.0;
}

double green_eval_zero_mean(double theta, double xi) { return green_eval(theta, xi) - kPi / 6.0; }

PeriodicScalarField solve_poisson_spectral(const PeriodicScalarField& rhs) {
  require_compatible(rhs, "solve_poisson_spectral");
  return spectral_solve(rhs);
}

PeriodicScalarField solve_poisson_kernel(const PeriodicScalarField& rhs) {
  require_compatible(rhs, "solve_poisson_kernel");
  const std::size_t n = rhs.size();
  const double h      = kTwoPi / static_cast<double>(n);
  PeriodicScalarField u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = h * static_cast<double>(i);
    double sum         = 0.0;
    for (std::size_t j = 0; j < n; ++j) { sum += green_eval_zero_mean(theta, h * static_cast<double>(j)) * rhs[j]; }
    u[i] = sum * h;
  }
  return u;
}

void require_constant_speed(const ClosedCurve& c, const char* what) {
  const double cv = speed_cv(c);
  if (cv > kConstantSpeedTolerance) {
    throw InvalidInput(std::string(what) + ": curve is not constant-speed (speed cv " + std::to_string(cv) +
                       "); reparametrize first");
  }
}

PeriodicScalarField solve_curve_poisson(const ClosedCurve& c, const PeriodicScalarField& rhs) {
  require_same_grid(c.size(), rhs.size(), "solve_curve_poisson");
  require_constant_speed(c, "solve_curve_poisson");
  require_compatible(rhs, "solve_curve_poisson");
  return detail::solve_curve_poisson_unchecked(perimeter(c), rhs);
}

namespace detail {

PeriodicScalarField solve_curve_poisson_unchecked(double length, const PeriodicScalarField& rhs) {
  auto centered     = rhs;
  const double mean = grid_mean(rhs.values);
  for (auto& v : centered.values) { v -= mean; }
  auto u              = spectral_solve(centered);
  const double factor = (length / kTwoPi) * (length / kTwoPi);
  for (auto& v : u.values) { v *= factor; }
  return u;
}

}  // namespace detail
}  // namespace curveflow
