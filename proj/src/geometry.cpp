#include "curveflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/fourier.hpp"

namespace curveflow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> xs(const PeriodicVectorField& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) { out[i] = f[i].x; }
  return out;
}
std::vector<double> ys(const PeriodicVectorField& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) { out[i] = f[i].y; }
  return out;
}
PeriodicVectorField zip(const std::vector<double>& x, const std::vector<double>& y) {
  PeriodicVectorField out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) { out[i] = {x[i], y[i]}; }
  return out;
}

void require_immersion(const PeriodicScalarField& speed) {
  const double top = *std::max_element(speed.values.begin(), speed.values.end());
  for (double s : speed.values) {
    if (!(s > 1e-12 * std::max(top, 1e-300))) { throw InvalidInput("curve has vanishing speed at a node"); }
  }
}

// Monotone cubic Hermite inversion of s(theta), Newton refinement, then
// trigonometric resampling of the coordinates.
ClosedCurve resample_once(const ClosedCurve& c) {
  const std::size_t n = c.size();
  const auto der      = differentiate(c);
  require_immersion(der.speed);

  const auto integral = fourier::antiderivative(der.speed.values);
  const double length = integral.mean * kTwoPi;
  const double h      = kTwoPi / static_cast<double>(n);

  // Arclength at the nodes, plus the closing node at theta = 2pi.
  std::vector<double> s(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = integral.mean * c.theta(i) + integral.oscillatory[i];
  }
  s[n] = length;
  std::vector<double> slope(n + 1);  // dtheta/ds = 1 / speed
  for (std::size_t i = 0; i < n; ++i) { slope[i] = 1.0 / der.speed[i]; }
  slope[n] = slope[0];

  std::vector<double> targets(n);
  std::size_t seg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = length * static_cast<double>(j) / static_cast<double>(n);
    while (seg + 1 < n && s[seg + 1] <= target) { ++seg; }
    const double ds = s[seg + 1] - s[seg];
    if (!(ds > 0.0)) { throw InvalidInput("arclength is not monotone; curve is not immersed"); }
    const double t  = (target - s[seg]) / ds;
    // Fritsch-Carlson limiting keeps the interpolant monotone.
    const double secant = h / ds;
    double m0           = slope[seg];
    double m1           = slope[seg + 1];
    const double a      = m0 / secant;
    const double b      = m1 / secant;
    if (a * a + b * b > 9.0) {
      const double tau = 3.0 / std::sqrt(a * a + b * b);
      m0               = tau * a * secant;
      m1               = tau * b * secant;
    }
    const double t2  = t * t;
    const double t3  = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    targets[j]       = h00 * c.theta(seg) + h10 * ds * m0 + h01 * (c.theta(seg) + h) + h11 * ds * m1;
  }

  // Newton steps on the trigonometric interpolant of s(theta) lift the
  // cubic estimate to spectral accuracy.
  for (int iter = 0; iter < 3; ++iter) {
    const auto osc = fourier::interpolate(integral.oscillatory, targets);
    const auto sp  = fourier::interpolate(der.speed.values, targets);
    for (std::size_t j = 0; j < n; ++j) {
      const double target = length * static_cast<double>(j) / static_cast<double>(n);
      if (sp[j] > 0.0) { targets[j] -= (integral.mean * targets[j] + osc[j] - target) / sp[j]; }
    }
  }

  const auto field = as_field(c);
  const auto x     = fourier::interpolate(xs(field), targets);
  const auto y     = fourier::interpolate(ys(field), targets);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) { pts[i] = {x[i], y[i]}; }
  pts[0] = c[0];
  return ClosedCurve(std::move(pts));
}

}  // namespace

ClosedCurve::ClosedCurve(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < kMinCurveSamples) {
    throw InvalidInput("closed curve needs at least " + std::to_string(kMinCurveSamples) + " samples, got " +
                       std::to_string(points_.size()));
  }
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) { throw InvalidInput("closed curve has non-finite sample"); }
  }
}

double ClosedCurve::theta(std::size_t i) const {
  return kTwoPi * static_cast<double>(i) / static_cast<double>(points_.size());
}

ClosedCurve make_circle(double radius, Vec2 center, std::size_t n) {
  if (!(radius > 0.0)) { throw InvalidInput("make_circle: radius must be positive"); }
  if (n < kMinCurveSamples) { throw InvalidInput("make_circle: too few samples"); }
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    pts[i]         = center + radius * Vec2{std::cos(t), std::sin(t)};
  }
  return ClosedCurve(std::move(pts));
}

ClosedCurve make_ellipse(double a, double b, std::size_t n) {
  if (!(a > 0.0) || !(b > 0.0)) { throw InvalidInput("make_ellipse: semi-axes must be positive"); }
  if (n < kMinCurveSamples) { throw InvalidInput("make_ellipse: too few samples"); }
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    pts[i]         = {a * std::cos(t), b * std::sin(t)};
  }
  return ClosedCurve(std::move(pts));
}

ClosedCurve scaled(const ClosedCurve& c, double factor) {
  auto pts = c.points();
  for (auto& p : pts) { p *= factor; }
  return ClosedCurve(std::move(pts));
}

ClosedCurve translated(const ClosedCurve& c, Vec2 shift) {
  auto pts = c.points();
  for (auto& p : pts) { p += shift; }
  return ClosedCurve(std::move(pts));
}

ClosedCurve rotated(const ClosedCurve& c, double angle) {
  auto pts = c.points();
  for (auto& p : pts) { p = rotate(p, angle); }
  return ClosedCurve(std::move(pts));
}

ClosedCurve shifted_start(const ClosedCurve& c, std::size_t offset) {
  const std::size_t n = c.size();
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) { pts[i] = c[(i + offset) % n]; }
  return ClosedCurve(std::move(pts));
}

ClosedCurve reversed(const ClosedCurve& c) {
  const std::size_t n = c.size();
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) { pts[i] = c[(n - i) % n]; }
  return ClosedCurve(std::move(pts));
}

ClosedCurve oriented_ccw(const ClosedCurve& c) { return enclosed_area(c) < 0.0 ? reversed(c) : c; }

PeriodicScalarField periodic_derivative(const PeriodicScalarField& f, int order) {
  return PeriodicScalarField(fourier::derivative(f.values, order));
}

PeriodicVectorField periodic_derivative(const PeriodicVectorField& f, int order) {
  return zip(fourier::derivative(xs(f), order), fourier::derivative(ys(f), order));
}

CurveDerivatives differentiate(const ClosedCurve& c) {
  const auto field = as_field(c);
  CurveDerivatives d;
  d.d1    = periodic_derivative(field, 1);
  d.d2    = periodic_derivative(field, 2);
  d.speed = PeriodicScalarField(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) { d.speed[i] = norm(d.d1[i]); }
  return d;
}

double perimeter(const ClosedCurve& c) { return kTwoPi * grid_mean(speeds(c).values); }

double enclosed_area(const ClosedCurve& c) {
  const auto d1 = periodic_derivative(as_field(c), 1);
  std::vector<double> integrand(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) { integrand[i] = 0.5 * cross(c[i], d1[i]); }
  return kTwoPi * grid_mean(integrand);
}

PeriodicScalarField speeds(const ClosedCurve& c) { return differentiate(c).speed; }

double speed_cv(const ClosedCurve& c) {
  const auto s      = speeds(c);
  const double mean = grid_mean(s.values);
  double var        = 0.0;
  for (double v : s.values) { var += (v - mean) * (v - mean); }
  var /= static_cast<double>(s.size());
  return std::sqrt(var) / mean;
}

bool is_constant_speed(const ClosedCurve& c, double tolerance) { return speed_cv(c) <= tolerance; }

Frames frames(const ClosedCurve& c) {
  const auto d1 = periodic_derivative(as_field(c), 1);
  PeriodicScalarField speed(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) { speed[i] = norm(d1[i]); }
  require_immersion(speed);
  Frames f{PeriodicVectorField(c.size()), PeriodicVectorField(c.size())};
  for (std::size_t i = 0; i < c.size(); ++i) {
    f.tangent[i] = d1[i] / speed[i];
    f.normal[i]  = perp(f.tangent[i]);
  }
  return f;
}

PeriodicVectorField curvature_vector(const ClosedCurve& c) {
  const auto d = differentiate(c);
  require_immersion(d.speed);
  PeriodicVectorField h(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 t   = d.d1[i] / d.speed[i];
    const Vec2 acc = d.d2[i] - dot(d.d2[i], t) * t;
    h[i]           = acc / (d.speed[i] * d.speed[i]);
  }
  return h;
}

PeriodicScalarField signed_curvature(const ClosedCurve& c) {
  const auto d = differentiate(c);
  require_immersion(d.speed);
  PeriodicScalarField k(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    k[i] = cross(d.d1[i], d.d2[i]) / (d.speed[i] * d.speed[i] * d.speed[i]);
  }
  return k;
}

double max_abs_curvature(const ClosedCurve& c) {
  const auto k = signed_curvature(c);
  double m     = 0.0;
  for (double v : k.values) { m = std::max(m, std::abs(v)); }
  return m;
}

ClosedCurve reparametrize_constant_speed(const ClosedCurve& c) {
  // A second pass removes the residual nonuniformity left by the Hermite
  // inversion of the first.
  return resample_once(resample_once(c));
}

PeriodicScalarField tangential_divergence(const ClosedCurve& c, const PeriodicVectorField& v) {
  require_same_grid(c.size(), v.size(), "tangential_divergence");
  const auto d1 = periodic_derivative(as_field(c), 1);
  const auto dv = periodic_derivative(v, 1);
  PeriodicScalarField out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double sp = norm(d1[i]);
    if (!(sp > 0.0)) { throw InvalidInput("curve has vanishing speed at a node"); }
    out[i] = dot(dv[i], d1[i]) / (sp * sp);
  }
  return out;
}

double integrate_over_curve(const ClosedCurve& c, const PeriodicScalarField& f, bool normalized) {
  require_same_grid(c.size(), f.size(), "integrate_over_curve");
  const auto s = speeds(c);
  if (normalized) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      num += f[i] * s[i];
      den += s[i];
    }
    return num / den;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) { sum += f[i] * s[i]; }
  return sum * kTwoPi / static_cast<double>(c.size());
}

void require_same_grid(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw InvalidInput(std::string(what) + ": grid mismatch (" + std::to_string(expected) + " vs " +
                       std::to_string(actual) + ")");
  }
}

PeriodicScalarField dot(const PeriodicVectorField& a, const PeriodicVectorField& b) {
  require_same_grid(a.size(), b.size(), "dot");
  PeriodicScalarField out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) { out[i] = dot(a[i], b[i]); }
  return out;
}

PeriodicVectorField scale(const PeriodicScalarField& f, const PeriodicVectorField& v) {
  require_same_grid(f.size(), v.size(), "scale");
  PeriodicVectorField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) { out[i] = f[i] * v[i]; }
  return out;
}

PeriodicVectorField operator+(const PeriodicVectorField& a, const PeriodicVectorField& b) {
  require_same_grid(a.size(), b.size(), "operator+");
  PeriodicVectorField out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) { out[i] = a[i] + b[i]; }
  return out;
}

PeriodicVectorField operator-(const PeriodicVectorField& a, const PeriodicVectorField& b) {
  require_same_grid(a.size(), b.size(), "operator-");
  PeriodicVectorField out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) { out[i] = a[i] - b[i]; }
  return out;
}

PeriodicVectorField as_field(const ClosedCurve& c) { return PeriodicVectorField(c.points()); }

double sup_norm(const PeriodicScalarField& f) {
  double m = 0.0;
  for (double v : f.values) { m = std::max(m, std::abs(v)); }
  return m;
}

double sup_norm(const PeriodicVectorField& f) {
  double m = 0.0;
  for (const auto& v : f.values) { m = std::max(m, norm(v)); }
  return m;
}

double grid_mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) { sum += v; }
  return sum / static_cast<double>(values.size());
}

}  // namespace curveflow
