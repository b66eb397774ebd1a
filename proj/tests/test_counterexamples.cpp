#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

#include "curveflow/counterexamples.hpp"
#include "curveflow/criteria.hpp"
#include "curveflow/errors.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace curveflow::testing;

namespace {

double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(f, a, b);
}

// Leading-order length lost at one corner: the two cut edge segments minus
// the parabola y = cot(alpha/2) x^2 / (2 eps) over [-eps, eps].
double corner_length_loss(double alpha, double eps) {
  const double c = 1.0 / std::tan(alpha / 2.0);
  const double parabola = eps * (std::sqrt(1.0 + c * c) + std::asinh(c) / c);
  return 2.0 * eps / std::sin(alpha / 2.0) - parabola;
}

}  // namespace

TEST_CASE("bump: mass, evenness, plateau") {
  for (double alpha : {kPi / 2.0, kPi / 3.0, kPi / 6.0}) {
    for (double eps : {0.2, 0.05, 0.01}) {
      const auto phi = bump_phi(eps, alpha);
      const double m = phi.margin();
      // Split at the plateau edges so the quadrature sees smooth pieces.
      const double mass = integrate([&](double x) { return phi(x); }, -eps, -eps + m) +
                          integrate([&](double x) { return phi(x); }, -eps + m, eps - m) +
                          integrate([&](double x) { return phi(x); }, eps - m, eps);
      CHECK(std::abs(mass - 2.0 / std::tan(alpha / 2.0)) < 1e-10);
      for (double x : {0.0, 0.3 * eps, eps - 0.5 * m, eps - 0.01 * m}) { CHECK(std::abs(phi(x) - phi(-x)) < 1e-14); }
      CHECK(phi(0.5 * eps) == phi.plateau());
      CHECK(phi(1.5 * eps) == 0.0);
      CHECK(phi(eps - 0.5 * m) < phi.plateau());
      CHECK(phi(eps - 0.5 * m) > 0.0);
    }
  }
  const auto p = bump_phi(0.01, kPi / 2.0);
  CHECK(p.plateau() >= 98.0);
  CHECK(p.plateau() <= 102.0);
  CHECK_THROWS_AS(bump_phi(1.5, 1.0), InvalidInput);
  CHECK_THROWS_AS(bump_phi(0.1, kPi), InvalidInput);
  CHECK_THROWS_AS(Bump(0.1, 1.0, 0.06), InvalidInput);
}

TEST_CASE("corner graph boundary data and plateau slope") {
  for (double alpha : {kPi / 2.0, kPi / 6.0}) {
    const double eps = 0.05, c = 1.0 / std::tan(alpha / 2.0);
    const auto g     = corner_graph(eps, alpha);
    CHECK(std::abs(g.u(eps) - c * eps) < 1e-12);
    CHECK(std::abs(g.u(-eps) - c * eps) < 1e-12);
    CHECK(std::abs(g.du(eps) - c) < 1e-10);
    CHECK(std::abs(g.du(-eps) + c) < 1e-10);
    CHECK(std::abs(g.du(0.0)) < 1e-10);
    for (double x : {0.1 * eps, 0.5 * eps, 0.9 * eps}) { CHECK(std::abs(g.du(x) - c * x / eps) < 2.0 * c * eps); }
    // u' is the integral of u''.
    const double x0 = 0.3 * eps, x1 = eps - 0.2 * g.bump().margin();
    const double m  = g.bump().margin();
    const double du = integrate([&](double x) { return g.d2u(x); }, x0, eps - m) +
                      integrate([&](double x) { return g.d2u(x); }, eps - m, x1);
    CHECK(std::abs(g.du(x1) - g.du(x0) - du) < 1e-10);
    // Arclength matches quadrature of sqrt(1 + u'^2) and inverts.
    const double s = integrate([&](double x) { return std::hypot(1.0, g.du(x)); }, 0.0, eps - m) +
                     integrate([&](double x) { return std::hypot(1.0, g.du(x)); }, eps - m, eps);
    CHECK(std::abs(g.half_length() - s) < 1e-12);
    CHECK(std::abs(g.abscissa(g.arclength(x1)) - x1) < 1e-12);
  }
}

TEST_CASE("corner energy constants") {
  CHECK(std::abs(corner_energy_constant(kPi / 2.0) - 5.0 * std::sqrt(2.0) / 6.0) < 1e-14);
  CHECK(std::abs(corner_energy_constant(kPi / 3.0) - 9.0 / 4.0) < 1e-14);
  CHECK(std::abs(corner_energy_constant(kPi / 6.0) - (41.0 * std::sqrt(2.0) + 25.0 * std::sqrt(6.0)) / 24.0) < 1e-13);
  // Independent quadrature of the defining integral.
  for (double alpha : {0.4, 1.0, 2.5}) {
    const double c = 1.0 / std::tan(alpha / 2.0);
    CHECK(std::abs(corner_energy_constant(alpha) - c * integrate([](double x) { return std::pow(1.0 + x * x, -2.5); }, -c, c)) < 1e-12);
  }
  const double combo = -corner_energy_constant(kPi / 2.0) / 3.0 + 2.0 * corner_energy_constant(kPi / 3.0) / 3.0 -
                       corner_energy_constant(kPi / 6.0) / 3.0;
  CHECK(std::abs(combo + 0.5486704288102535) < 1e-13);
  CHECK(std::abs(std::round(-combo * 1e4) - 5487.0) == 0.0);
}

TEST_CASE("numeric corner energies: 1/eps and 1/eps^2 growth") {
  const double alpha = kPi / 2.0;
  for (double eps : {0.04, 0.01}) {
    const auto g     = corner_graph(eps, alpha);
    const double m   = g.bump().margin();
    auto kappa2_ds   = [&](double x) { return std::pow(g.d2u(x), 2) / std::pow(1.0 + g.du(x) * g.du(x), 2.5); };
    const double direct = integrate(kappa2_ds, -eps, -eps + m) + integrate(kappa2_ds, -eps + m, eps - m) +
                          integrate(kappa2_ds, eps - m, eps);
    CHECK(relative_error(corner_energy_numeric(alpha, eps), direct) < 1e-10);
  }
  const double e1 = 0.04 * corner_energy_numeric(alpha, 0.04);
  const double e2 = 0.02 * corner_energy_numeric(alpha, 0.02);
  const double e3 = 0.01 * corner_energy_numeric(alpha, 0.01);
  CHECK(std::abs(e3 - corner_energy_constant(alpha)) < std::abs(e2 - corner_energy_constant(alpha)));
  CHECK(std::abs(e2 - corner_energy_constant(alpha)) < std::abs(e1 - corner_energy_constant(alpha)));

  const double ratio = corner_cubed_numeric(alpha, 0.01) / corner_cubed_numeric(alpha, 0.02);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  CHECK(corner_cubed_numeric(kPi / 3.0, 0.05) > 0.0);
  CHECK(corner_cubed_numeric(3.1, 0.05) < 1e-3 * corner_cubed_numeric(kPi / 2.0, 0.05));
}

TEST_CASE("fit of a / eps + b") {
  const std::vector<double> eps{0.04, 0.02, 0.01};
  std::vector<double> v;
  for (double e : eps) { v.push_back(1.7 / e - 0.3 + 2.0 * e); }
  const auto f = fit_inverse_eps(eps, v);
  const double a = (v[2] - v[1]) / (1.0 / eps[2] - 1.0 / eps[1]);
  CHECK(std::abs(f.a - a) < 1e-12);
  CHECK(std::abs(f.b - (v[2] - a / eps[2])) < 1e-10);
  CHECK(std::abs(f.residual) > 1e-3);
}

TEST_CASE("polygon specs and validation") {
  const auto f1 = fig1_spec(0.05);
  CHECK(f1.vertices.size() == 3);
  CHECK(std::abs(f1.vertices[0].x + 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(f1.vertices[2].y - 2.0 * std::sqrt(3.0) / 3.0) < 1e-15);
  CHECK_NOTHROW(validate(f1));

  auto cw = f1;
  std::swap(cw.vertices[1], cw.vertices[2]);
  CHECK_THROWS_AS(validate(cw), InvalidInput);
  CHECK_THROWS_AS(validate(fig1_spec(0.4)), InvalidInput);
  auto nonconvex = PolygonSpec{{{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.2}, {2.0, 2.0}, {0.0, 2.0}}, {0.01, 0.01, 0.01, 0.01, 0.01}, {}};
  CHECK_THROWS_AS(validate(nonconvex), InvalidInput);
  CHECK_THROWS_AS(mollified_polygon(fig1_spec(0.01), 256), InvalidInput);
}

TEST_CASE("mollified triangle perimeters") {
  // Exact perimeter against the leading-order corner loss.
  for (double eps : {1e-2, 1e-3}) {
    const double loss = corner_length_loss(kPi / 2.0, eps) + corner_length_loss(kPi / 3.0, eps) + corner_length_loss(kPi / 6.0, eps);
    CHECK(std::abs(mollified_perimeter(fig1_spec(eps)) - (3.0 + std::sqrt(3.0) - loss)) < 5.0 * eps * eps + 1e-12);
  }
  const double p2 = mollified_perimeter(fig2_spec(0.01));
  CHECK(p2 > 4.2022);
  CHECK(p2 < 2.0 + 2.0 * std::sqrt(2.0));

  const auto c = mollified_polygon(fig1_spec(0.05), default_resolution(fig1_spec(0.05), 8.0));
  CHECK(relative_error(perimeter(c), mollified_perimeter(fig1_spec(0.05))) < 1e-9);
  CHECK(speed_cv(c) < kCriterionResampleThreshold);
}

TEST_CASE("mollified polygon: smooth gluing, turning number, symmetry") {
  const auto spec = fig2_spec(0.05);
  const auto c    = mollified_polygon(spec, default_resolution(spec));
  CHECK(std::abs(integrate_over_curve(c, signed_curvature(c), false) - 2.0 * kPi) < 1e-6);
  // Unit tangents turn monotonically with no jumps.
  const auto t = frames(c).tangent;
  double biggest = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double turn = cross(t[i], t[(i + 1) % c.size()]);
    CHECK(turn > -1e-10);
    biggest = std::max(biggest, turn);
  }
  CHECK(biggest < 0.2);
  // Mirror image about the vertical axis reproduces the node set.
  const std::size_t n = c.size();
  double mirror       = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = c[i];
    const Vec2 q = c[(n - i) % n];
    mirror       = std::max(mirror, norm(Vec2{-p.x, p.y} - q));
  }
  CHECK(mirror < 1e-10);
}

TEST_CASE("sweeps agree with the corner decomposition") {
  const std::vector<double> eps{0.08, 0.04};
  const auto fig1 = sv_contradiction_sweep(eps, 2);
  CHECK(fig1.rows.size() == 2);
  CHECK(fig1.eps_power == 1);
  std::vector<double> gaps;
  for (const auto& row : fig1.rows) {
    CHECK(row.error_estimate < 1e-6 * norm(row.value));
    // int Phi kappa^2 ds - centroid * int kappa^2 ds with the mass of
    // kappa^2 concentrated at the vertices.
    const auto spec = fig1_spec(row.eps);
    const auto c    = mollified_polygon(spec, row.n);
    const auto k    = signed_curvature(c);
    PeriodicScalarField x(c.size()), k2(c.size()), xk2(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      x[i]   = c[i].x;
      k2[i]  = k[i] * k[i];
      xk2[i] = x[i] * k2[i];
    }
    const double centroid = integrate_over_curve(c, x, true);
    double lumped         = 0.0;
    const double angles[] = {kPi / 2.0, kPi / 3.0, kPi / 6.0};
    for (int v = 0; v < 3; ++v) { lumped += (spec.vertices[v].x - centroid) * corner_energy_numeric(angles[v], row.eps); }
    gaps.push_back(row.value.x - lumped);
    CHECK(std::abs(row.value.x - (integrate_over_curve(c, xk2, false) - centroid * integrate_over_curve(c, k2, false))) <
          1e-9 * std::abs(row.value.x));
  }
  // Lumping each corner at its vertex misplaces mass of order 1/eps by a
  // distance of order eps, so the gap stays O(1) while the value grows.
  CHECK(std::abs(gaps[0]) < 0.25 * std::abs(fig1.rows[0].value.x));
  CHECK(std::abs(gaps[1] - gaps[0]) < 0.05 * std::abs(gaps[0]));
  const auto fig2 = mm_divergence_sweep(eps, 1);
  CHECK(fig2.eps_power == 2);
  CHECK(std::abs(fig2.rows[1].value.x) < 1e-6 * std::abs(fig2.rows[1].value.y));
  CHECK(fig2.rows[1].value.y / fig2.rows[0].value.y > 3.0);
  CHECK_THROWS_AS(sv_contradiction_sweep({0.02, 0.04}), InvalidInput);
}
