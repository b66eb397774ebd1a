#pragma once

// Closed plane curves sampled on the uniform grid theta_i = 2*pi*i/n and the
// pointwise differential geometry built on Fourier-collocation derivatives.
//
// Conventions:
//   - Curves are stored counterclockwise; the built-in constructors produce
//     that orientation and the JSON reader normalizes to it.
//   - N is T rotated by +pi/2, so for a counterclockwise curve N points into
//     the enclosed region and the signed curvature of a convex curve is > 0.
//   - All quadrature is the trapezoidal rule on the periodic grid.

#include <cstddef>
#include <span>
#include <vector>

#include "curveflow/vec2.hpp"

namespace curveflow {

inline constexpr std::size_t kMinCurveSamples = 16;

struct PeriodicScalarField {
  std::vector<double> values;

  PeriodicScalarField() = default;
  explicit PeriodicScalarField(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit PeriodicScalarField(std::vector<double> v) : values(std::move(v)) {}

  [[nodiscard]] std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

struct PeriodicVectorField {
  std::vector<Vec2> values;

  PeriodicVectorField() = default;
  explicit PeriodicVectorField(std::size_t n, Vec2 fill = {}) : values(n, fill) {}
  explicit PeriodicVectorField(std::vector<Vec2> v) : values(std::move(v)) {}

  [[nodiscard]] std::size_t size() const { return values.size(); }
  Vec2& operator[](std::size_t i) { return values[i]; }
  const Vec2& operator[](std::size_t i) const { return values[i]; }
};

// Immutable sample set of a smooth periodic map Phi: [0, 2pi) -> R^2.
// Periodicity is implicit: there is no duplicated closing point.
class ClosedCurve {
 public:
  // Throws InvalidInput when fewer than kMinCurveSamples points are given.
  explicit ClosedCurve(std::vector<Vec2> points);

  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<Vec2>& points() const { return points_; }
  [[nodiscard]] const Vec2& operator[](std::size_t i) const { return points_[i]; }

  [[nodiscard]] double theta(std::size_t i) const;

 private:
  std::vector<Vec2> points_;
};

// -- constructors -----------------------------------------------------------

ClosedCurve make_circle(double radius, Vec2 center, std::size_t n);
ClosedCurve make_ellipse(double a, double b, std::size_t n);

// Rigid motions and scalings act on the sample points; parametrization is kept.
ClosedCurve scaled(const ClosedCurve& c, double factor);
ClosedCurve translated(const ClosedCurve& c, Vec2 shift);
ClosedCurve rotated(const ClosedCurve& c, double angle);
// Cyclic index shift: node i of the result is node (i + offset) mod n.
ClosedCurve shifted_start(const ClosedCurve& c, std::size_t offset);
// Reverses traversal while keeping node 0 fixed.
ClosedCurve reversed(const ClosedCurve& c);
// Returns the curve with counterclockwise orientation.
ClosedCurve oriented_ccw(const ClosedCurve& c);

// -- spectral calculus ----------------------------------------------------------

PeriodicScalarField periodic_derivative(const PeriodicScalarField& f, int order);
PeriodicVectorField periodic_derivative(const PeriodicVectorField& f, int order);

// First and second theta-derivatives and the speed |dPhi/dtheta| of a curve.
struct CurveDerivatives {
  PeriodicVectorField d1;
  PeriodicVectorField d2;
  PeriodicScalarField speed;
};
CurveDerivatives differentiate(const ClosedCurve& c);

// -- pointwise geometry ---------------------------------------------------------

double perimeter(const ClosedCurve& c);
double enclosed_area(const ClosedCurve& c);  // signed; > 0 for counterclockwise

PeriodicScalarField speeds(const ClosedCurve& c);
// Coefficient of variation (std / mean) of the node speeds.
double speed_cv(const ClosedCurve& c);
bool is_constant_speed(const ClosedCurve& c, double tolerance);

struct Frames {
  PeriodicVectorField tangent;
  PeriodicVectorField normal;
};
Frames frames(const ClosedCurve& c);

PeriodicVectorField curvature_vector(const ClosedCurve& c);
PeriodicScalarField signed_curvature(const ClosedCurve& c);
double max_abs_curvature(const ClosedCurve& c);

// Samples the same image at n points equally spaced in arclength, keeping
// node 0 in place.
ClosedCurve reparametrize_constant_speed(const ClosedCurve& c);

// div_Gamma V = (dV/dtheta . T) / |dPhi/dtheta|.
PeriodicScalarField tangential_divergence(const ClosedCurve& c, const PeriodicVectorField& v);

// Trapezoidal integral of f |dPhi/dtheta| dtheta; divided by the perimeter
// when normalized.
double integrate_over_curve(const ClosedCurve& c, const PeriodicScalarField& f, bool normalized);

// -- field helpers ----------------------------------------------------------------

void require_same_grid(std::size_t expected, std::size_t actual, const char* what);
PeriodicScalarField dot(const PeriodicVectorField& a, const PeriodicVectorField& b);
PeriodicVectorField scale(const PeriodicScalarField& f, const PeriodicVectorField& v);
PeriodicVectorField operator+(const PeriodicVectorField& a, const PeriodicVectorField& b);
PeriodicVectorField operator-(const PeriodicVectorField& a, const PeriodicVectorField& b);
PeriodicVectorField as_field(const ClosedCurve& c);
double sup_norm(const PeriodicScalarField& f);
double sup_norm(const PeriodicVectorField& f);
// Plain grid average (1/n) sum f_i, i.e. the d(theta)/2pi mean.
double grid_mean(std::span<const double> values);

}  // namespace curveflow
