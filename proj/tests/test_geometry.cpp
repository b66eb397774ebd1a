#include <doctest.h>

#include <cmath>
#include <random>

#include "curveflow/errors.hpp"
#include "curveflow/fourier.hpp"
#include "curveflow/geometry.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace curveflow::testing;

TEST_CASE("fourier round trip and derivatives of trigonometric polynomials") {
  const std::size_t n = 64;
  std::vector<double> f(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::sin(3.0 * theta_at(i, n));
    g[i] = std::cos(7.0 * theta_at(i, n));
  }
  const auto back = fourier::inverse(fourier::forward(f), n);
  const auto df   = fourier::derivative(f, 1);
  const auto d2g  = fourier::derivative(g, 2);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(back[i] == doctest::Approx(f[i]).epsilon(1e-14));
    CHECK(std::abs(df[i] - 3.0 * std::cos(3.0 * theta_at(i, n))) < 1e-12);
    CHECK(std::abs(d2g[i] + 49.0 * g[i]) < 1e-10);
  }
}

TEST_CASE("derivative of a constant vanishes exactly") {
  const std::vector<double> c(32, 2.5);
  for (double v : fourier::derivative(c, 1)) { CHECK(v == 0.0); }
}

TEST_CASE("antiderivative of a zero-mean signal") {
  const std::size_t n = 64;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) { f[i] = 1.5 + std::cos(2.0 * theta_at(i, n)); }
  const auto a = fourier::antiderivative(f);
  CHECK(a.mean == doctest::Approx(1.5).epsilon(1e-14));
  for (std::size_t i = 0; i < n; ++i) { CHECK(std::abs(a.oscillatory[i] - 0.5 * std::sin(2.0 * theta_at(i, n))) < 1e-13); }
}

TEST_CASE("band-limited interpolation at off-grid angles") {
  const std::size_t n = 64;
  std::vector<double> f(n);
  auto exact = [](double t) { return std::cos(5.0 * t) - 0.3 * std::sin(11.0 * t) + 0.1 * std::cos(29.0 * t); };
  for (std::size_t i = 0; i < n; ++i) { f[i] = exact(theta_at(i, n)); }
  std::vector<double> at{0.0137, 1.0, 2.71, 3.14159, 5.5, 6.2};
  const auto got = fourier::interpolate(f, at);
  for (std::size_t k = 0; k < at.size(); ++k) { CHECK(std::abs(got[k] - exact(at[k])) < 1e-10); }
}

TEST_CASE("closed curves need at least 16 samples") {
  CHECK_THROWS_AS(ClosedCurve(std::vector<Vec2>(8)), InvalidInput);
  CHECK_THROWS_AS(make_circle(-1.0, {0.0, 0.0}, 64), InvalidInput);
  CHECK_THROWS_AS(make_ellipse(1.0, 0.0, 64), InvalidInput);
}

TEST_CASE("circle: speed, perimeter, curvature") {
  const auto unit = make_circle(1.0, {0.0, 0.0}, 64);
  for (double s : speeds(unit).values) { CHECK(s == doctest::Approx(1.0).epsilon(1e-12)); }
  CHECK(perimeter(unit) == doctest::Approx(2.0 * kPi).epsilon(1e-12));

  const auto c = make_circle(0.7, {1.0, -2.0}, 96);
  CHECK(relative_error(perimeter(c), 2.0 * kPi * 0.7) < 1e-10);

  const auto big = make_circle(2.0, {0.0, 0.0}, 128);
  for (double k : signed_curvature(big).values) { CHECK(std::abs(k - 0.5) < 1e-8); }
  const auto h = curvature_vector(big);
  for (std::size_t i = 0; i < big.size(); ++i) {
    CHECK(std::abs(norm(h[i]) - 0.5) < 1e-8);
    CHECK(dot(h[i], big[i]) < 0.0);
  }
}

TEST_CASE("ellipse against analytic curvature and perimeter") {
  CHECK(sup_norm(as_field(make_ellipse(1.0, 1.0, 64)) - as_field(make_circle(1.0, {0.0, 0.0}, 64))) == 0.0);

  const auto e = make_ellipse(2.0, 1.0, 256);
  CHECK(std::abs(signed_curvature(e)[0] - 2.0) < 1e-6);
  CHECK(std::abs(perimeter(e) - ellipse_perimeter(2.0, 1.0)) < 1e-5);
  CHECK(perimeter(e) == doctest::Approx(9.688448).epsilon(1e-6));

  const auto fine = make_ellipse(2.0, 1.0, 512);
  const auto h    = curvature_vector(fine);
  const auto fr   = frames(fine);
  double worst    = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const Vec2 want = ellipse_curvature(2.0, 1.0, fine.theta(i)) * fr.normal[i];
    worst           = std::max(worst, norm(h[i] - want));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("curvature error decays spectrally on the ellipse") {
  // The constant-speed ellipse is not a trigonometric polynomial. Each node
  // is compared with the exact curvature at its own ellipse parameter.
  auto error = [](std::size_t n) {
    const auto c = reparametrize_constant_speed(make_ellipse(2.0, 1.0, n));
    const auto k = signed_curvature(c);
    double e     = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = std::atan2(c[i].y, c[i].x / 2.0);
      e              = std::max(e, std::abs(k[i] - ellipse_curvature(2.0, 1.0, t)));
    }
    return e;
  };
  const double e64 = error(64), e128 = error(128);
  CHECK(e128 < 1e-8);
  CHECK(e64 / e128 > 1e3);
}

TEST_CASE("frames are orthonormal and N is T rotated counterclockwise") {
  std::mt19937_64 rng(7);
  const auto c  = random_smooth_curve(rng, 128);
  const auto fr = frames(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(norm(fr.tangent[i]) - 1.0) < 1e-14);
    CHECK(std::abs(dot(fr.tangent[i], fr.normal[i])) < 1e-14);
    CHECK(norm(fr.normal[i] - perp(fr.tangent[i])) == 0.0);
  }
  const auto circle = make_circle(1.0, {0.0, 0.0}, 32);
  const auto cf     = frames(circle);
  for (std::size_t i = 0; i < circle.size(); ++i) { CHECK(norm(cf.normal[i] + circle[i]) < 1e-13); }
}

TEST_CASE("curvature vector is normal and scales inversely") {
  const auto e  = make_ellipse(1.5, 1.0, 128);
  const auto h  = curvature_vector(e);
  const auto fr = frames(e);
  for (std::size_t i = 0; i < e.size(); ++i) { CHECK(std::abs(dot(h[i], fr.tangent[i])) < 1e-12); }
  const auto h3 = curvature_vector(scaled(e, 3.0));
  for (std::size_t i = 0; i < e.size(); ++i) { CHECK(norm(3.0 * h3[i] - h[i]) < 1e-12); }
}

TEST_CASE("orientation and rigid motions") {
  const auto e   = make_ellipse(2.0, 1.0, 128);
  const auto rev = reversed(e);
  CHECK(enclosed_area(rev) < 0.0);
  CHECK(enclosed_area(oriented_ccw(rev)) == doctest::Approx(2.0 * kPi).epsilon(1e-12));

  const auto moved = translated(rotated(e, 0.7), {3.0, -1.0});
  CHECK(std::abs(perimeter(moved) - perimeter(e)) < 1e-12);
  CHECK(std::abs(max_abs_curvature(moved) - max_abs_curvature(e)) < 1e-10);
  CHECK(perimeter(scaled(e, 2.5)) == doctest::Approx(2.5 * perimeter(e)).epsilon(1e-14));

  const auto shifted = shifted_start(e, 5);
  CHECK(norm(shifted[0] - e[5]) == 0.0);
  CHECK(norm(shifted[127] - e[4]) == 0.0);
}

TEST_CASE("constant-speed reparametrization") {
  const auto e = make_ellipse(2.0, 1.0, 512);
  const auto r = reparametrize_constant_speed(e);
  CHECK(speed_cv(e) > 0.1);
  CHECK(speed_cv(r) < 1e-6);
  CHECK(relative_error(perimeter(r), perimeter(e)) < 1e-8);
  CHECK(norm(r[0] - e[0]) == 0.0);

  // Every resampled node lies on the ellipse.
  double off = 0.0;
  for (const auto& p : r.points()) { off = std::max(off, std::abs(p.x * p.x / 4.0 + p.y * p.y - 1.0)); }
  CHECK(off < 1e-10);

  const auto twice = reparametrize_constant_speed(r);
  CHECK(sup_norm(as_field(twice) - as_field(r)) < 1e-8 * perimeter(e));

  const auto circle = make_circle(1.0, {0.5, 0.5}, 64);
  CHECK(sup_norm(as_field(reparametrize_constant_speed(circle)) - as_field(circle)) < 1e-12);
}

TEST_CASE("tangential divergence identities") {
  const auto e  = reparametrize_constant_speed(make_ellipse(2.0, 1.0, 256));
  const auto fr = frames(e);
  for (double v : tangential_divergence(e, fr.tangent).values) { CHECK(std::abs(v) < 1e-10); }
  for (double v : tangential_divergence(e, as_field(e)).values) { CHECK(std::abs(v - 1.0) < 1e-8); }

  const double r = 1.7;
  const auto c   = make_circle(r, {0.0, 0.0}, 128);
  for (double v : tangential_divergence(c, curvature_vector(c)).values) { CHECK(std::abs(v + 1.0 / (r * r)) < 1e-8); }

  CHECK_THROWS_AS(tangential_divergence(e, PeriodicVectorField(128)), InvalidInput);
}

TEST_CASE("curve integrals") {
  std::mt19937_64 rng(11);
  const auto c = random_smooth_curve(rng, 256);
  const PeriodicScalarField one(256, 1.0);
  CHECK(integrate_over_curve(c, one, true) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_over_curve(c, one, false) == doctest::Approx(perimeter(c)).epsilon(1e-14));
  CHECK(std::abs(integrate_over_curve(c, signed_curvature(c), false) - 2.0 * kPi) < 1e-6);
}
