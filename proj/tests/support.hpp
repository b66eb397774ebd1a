#pragma once

// Shared fixtures for the unit and acceptance tests: seeded random fields
// and curves, plus quadrature oracles that do not share code with the
// library.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow::testing {

inline constexpr double kPi = std::numbers::pi;

inline double theta_at(std::size_t i, std::size_t n) { return 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n); }

// Zero-mean trigonometric polynomial with modes 1..max_mode and coefficients
// decaying like 1/k, scaled to unit sup-norm.
inline PeriodicScalarField random_band_limited(std::mt19937_64& rng, std::size_t n, int max_mode) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(max_mode) + 1), b(a.size());
  for (int k = 1; k <= max_mode; ++k) {
    a[static_cast<std::size_t>(k)] = coef(rng) / k;
    b[static_cast<std::size_t>(k)] = coef(rng) / k;
  }
  PeriodicScalarField f(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = theta_at(i, n);
    for (int k = 1; k <= max_mode; ++k) {
      f[i] += a[static_cast<std::size_t>(k)] * std::cos(k * t) + b[static_cast<std::size_t>(k)] * std::sin(k * t);
    }
    peak = std::max(peak, std::abs(f[i]));
  }
  for (auto& v : f.values) { v /= peak; }
  return f;
}

inline PeriodicVectorField random_vector_field(std::mt19937_64& rng, std::size_t n, int max_mode) {
  const auto fx = random_band_limited(rng, n, max_mode);
  const auto fy = random_band_limited(rng, n, max_mode);
  std::uniform_real_distribution<double> offset(-0.5, 0.5);
  const Vec2 c{offset(rng), offset(rng)};
  PeriodicVectorField v(n);
  for (std::size_t i = 0; i < n; ++i) { v[i] = Vec2{fx[i], fy[i]} + c; }
  return v;
}

// Star-shaped curve r(theta) = 1 + sum of a few small modes, centre shifted
// at random. Convex for the amplitudes used here.
inline ClosedCurve random_smooth_curve(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> amp(-0.04, 0.04);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> shift(-0.3, 0.3);
  double a[6], p[6];
  for (int k = 2; k < 6; ++k) {
    a[k] = amp(rng);
    p[k] = phase(rng);
  }
  const Vec2 centre{shift(rng), shift(rng)};
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = theta_at(i, n);
    double r       = 1.0;
    for (int k = 2; k < 6; ++k) { r += a[k] * std::cos(k * t + p[k]); }
    pts[i] = centre + r * Vec2{std::cos(t), std::sin(t)};
  }
  return ClosedCurve(std::move(pts));
}

// Perimeter of the ellipse (a cos t, b sin t) by tanh-sinh quadrature.
inline double ellipse_perimeter(double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return 4.0 * q.integrate([&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); }, 0.0, kPi / 2.0);
}

inline double ellipse_curvature(double a, double b, double t) {
  const double s = std::sin(t), c = std::cos(t);
  return a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

inline double max_diff(const PeriodicScalarField& a, const PeriodicScalarField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) { d = std::max(d, std::abs(a[i] - b[i])); }
  return d;
}

inline double relative_error(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace curveflow::testing
