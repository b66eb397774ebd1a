#include "curveflow/criteria.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curveflow/elliptic.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/parallel.hpp"
#include "curveflow/projection.hpp"

namespace curveflow {
namespace {

constexpr double kPi    = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Trapezoidal integral of grid values over [0, 2pi].
double theta_integral(const std::vector<double>& f) {
  double sum = 0.0;
  for (double v : f) { sum += v; }
  return sum * kTwoPi / static_cast<double>(f.size());
}

struct SecondDerivativeData {
  ClosedCurve curve;
  PeriodicVectorField d2;
  std::vector<double> d2sq;
  double sigma;  // constant speed l / 2pi
};

SecondDerivativeData prepare(const ClosedCurve& c) {
  SecondDerivativeData out{constant_speed_form(c), {}, {}, 0.0};
  out.d2 = periodic_derivative(as_field(out.curve), 2);
  out.d2sq.resize(out.d2.size());
  for (std::size_t i = 0; i < out.d2.size(); ++i) { out.d2sq[i] = norm2(out.d2[i]); }
  out.sigma = perimeter(out.curve) / kTwoPi;
  return out;
}

double translation_form(const SecondDerivativeData& d, Vec2 u) {
  const std::size_t n = d.curve.size();
  std::vector<double> weighted(n);
  std::vector<double> linear(n);
  for (std::size_t i = 0; i < n; ++i) {
    linear[i]   = dot(d.curve[i], u);
    weighted[i] = linear[i] * d.d2sq[i];
  }
  return theta_integral(weighted) - theta_integral(linear) * theta_integral(d.d2sq) / kTwoPi;
}

Vec2 unit(Vec2 u) {
  const double len = norm(u);
  if (!(len > 0.0) || !std::isfinite(len)) { throw InvalidInput("direction vector must be nonzero and finite"); }
  return u / len;
}

Vec2 cubic_form(const SecondDerivativeData& d) {
  Vec2 sum{};
  for (std::size_t i = 0; i < d.d2.size(); ++i) { sum += d.d2sq[i] * d.d2[i]; }
  return sum * (kTwoPi / static_cast<double>(d.d2.size()));
}

struct FrameTerms {
  double hv        = 0.0;
  double other     = 0.0;
  double reduced   = 0.0;
  double abs_scale = 0.0;  // sum of pointwise magnitudes, for the roundoff floor
};

FrameTerms sv_frame(const CurvePath& path, std::size_t k, std::size_t stride) {
  const ClosedCurve& c = path.curve(k);
  const auto v         = path.velocity(k, stride);
  const auto proj      = coherent_projection(c, v);
  const auto sigma     = modified_mcf_field(c).potential;
  const auto h         = curvature_vector(c);
  const auto d         = differentiate(c);
  const auto du        = periodic_derivative(proj.potential, 1);
  const auto dsigma    = periodic_derivative(sigma, 1);

  const std::size_t n = c.size();
  FrameTerms out;
  double hv = 0.0, other = 0.0, reduced = 0.0, mag = 0.0, len = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sp  = d.speed[i];
    const double a   = dot(h[i], proj.field[i]);
    const double b   = dsigma[i] * du[i] / (sp * sp);
    hv += a * sp;
    other += b * sp;
    reduced -= sigma[i] * a * sp;
    mag += (std::abs(a) + std::abs(b)) * sp;
    len += sp;
  }
  out.hv        = hv / len;
  out.other     = other / len;
  out.reduced   = reduced / len;
  out.abs_scale = mag / len;
  return out;
}

FrameTerms mm_frame(const CurvePath& path, std::size_t k, std::size_t stride) {
  const ClosedCurve& c = path.curve(k);
  const auto v         = path.velocity(k, stride);
  const auto fr        = frames(c);
  const auto h         = curvature_vector(c);
  const auto sp        = speeds(c);
  const double dtheta  = kTwoPi / static_cast<double>(c.size());

  FrameTerms out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 vperp = dot(v[i], fr.normal[i]) * fr.normal[i];
    const double hv  = dot(h[i], vperp);
    const double h2  = norm2(h[i]);
    out.hv += hv * sp[i] * dtheta;
    out.other += h2 * hv * sp[i] * dtheta;
    out.abs_scale += (1.0 + h2) * std::abs(hv) * sp[i] * dtheta;
  }
  out.reduced = std::numeric_limits<double>::quiet_NaN();
  return out;
}

template <class FrameFn>
LoopIntegral integrate_loop(const CurvePath& path, unsigned jobs, FrameFn frame) {
  const std::size_t m = path.m();
  if (m % 2 != 0) { throw InvalidInput("loop integral needs an even number of time samples"); }

  std::vector<FrameTerms> fine(m);
  std::vector<FrameTerms> coarse(m / 2);
  parallel_for(m + m / 2, jobs, [&](std::size_t j) {
    if (j < m) {
      fine[j] = frame(path, j, 1);
    } else {
      coarse[j - m] = frame(path, 2 * (j - m), 2);
    }
  });

  LoopIntegral out;
  out.m        = m;
  double scale = 0.0;
  for (const auto& f : fine) {
    out.hv_term += f.hv;
    out.other_term += f.other;
    out.reduced_term += f.reduced;
    scale += f.abs_scale;
  }
  const double dt = 1.0 / static_cast<double>(m);
  out.hv_term *= dt;
  out.other_term *= dt;
  out.reduced_term *= dt;
  out.value = out.hv_term + out.other_term;

  double coarse_value = 0.0;
  for (const auto& f : coarse) { coarse_value += f.hv + f.other; }
  coarse_value *= 2.0 * dt;

  const double floor  = 64.0 * std::numeric_limits<double>::epsilon() * scale * dt;
  out.error_estimate  = std::abs(out.value - coarse_value) + floor;
  return out;
}

}  // namespace

ClosedCurve constant_speed_form(const ClosedCurve& c) {
  if (speed_cv(c) <= kCriterionResampleThreshold) { return c; }
  return reparametrize_constant_speed(c);
}

double criterion_sv(const ClosedCurve& c) {
  const auto d        = prepare(c);
  const std::size_t n = d.curve.size();
  std::vector<double> r2(n);
  std::vector<double> weighted(n);
  for (std::size_t i = 0; i < n; ++i) {
    r2[i]       = norm2(d.curve[i]);
    weighted[i] = r2[i] * d.d2sq[i];
  }
  return theta_integral(weighted) - theta_integral(r2) * theta_integral(d.d2sq) / kTwoPi;
}

double criterion_sv_translation(const ClosedCurve& c, Vec2 u) { return translation_form(prepare(c), unit(u)); }

double criterion_sv_translation_arclength(const ClosedCurve& c, Vec2 u) {
  const auto d = prepare(c);
  return translation_form(d, unit(u)) / (d.sigma * d.sigma * d.sigma);
}

Vec2 criterion_mm(const ClosedCurve& c) { return cubic_form(prepare(c)); }

Vec2 criterion_mm_arclength(const ClosedCurve& c) {
  const auto d      = prepare(c);
  const double s5   = std::pow(d.sigma, 5);
  return cubic_form(d) / s5;
}

QuantityQ quantity_q(const ClosedCurve& c) {
  const double len = perimeter(c);
  if (std::abs(len - 1.0) > 1e-8) {
    throw InvalidInput("quantity_q: curve perimeter must be 1 (got " + std::to_string(len) + ")");
  }
  const auto d        = prepare(c);
  const std::size_t n = d.curve.size();
  const double h      = kTwoPi / static_cast<double>(n);

  std::vector<double> pairing(n);
  std::vector<double> r2(n);
  std::vector<double> weighted(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairing[i]  = dot(d.d2[i], d.curve[i]);
    r2[i]       = norm2(d.curve[i]);
    weighted[i] = r2[i] * d.d2sq[i];
  }

  QuantityQ q;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = h * static_cast<double>(i);
    double inner       = 0.0;
    for (std::size_t j = 0; j < n; ++j) { inner += green_eval_zero_mean(theta, h * static_cast<double>(j)) * d.d2sq[j]; }
    q.kernel += inner * h * pairing[i];
  }
  q.kernel *= h;
  q.reduced = -0.5 * theta_integral(weighted) + theta_integral(r2) * theta_integral(d.d2sq) / (4.0 * kPi);
  return q;
}

CurvePath::CurvePath(std::vector<ClosedCurve> frames, double closure_tolerance) {
  if (frames.size() < 5) { throw InvalidInput("curve path needs at least 4 distinct time samples"); }
  const std::size_t n = frames.front().size();
  double scale        = 0.0;
  for (const auto& f : frames) {
    require_same_grid(n, f.size(), "CurvePath");
    for (const auto& p : f.points()) { scale = std::max(scale, norm(p)); }
  }
  const auto& first = frames.front();
  const auto& last  = frames.back();
  double gap        = 0.0;
  for (std::size_t i = 0; i < n; ++i) { gap = std::max(gap, norm(last[i] - first[i])); }
  if (gap > closure_tolerance * std::max(1.0, scale)) {
    throw InvalidInput("curve path is not closed: end frame differs from start frame by " + std::to_string(gap));
  }
  frames.pop_back();
  curves_ = std::move(frames);
}

PeriodicVectorField CurvePath::velocity(std::size_t k, std::size_t stride) const {
  const std::size_t m = curves_.size();
  if (stride == 0 || 2 * stride >= m) { throw InvalidInput("CurvePath::velocity: invalid stride"); }
  const auto& ahead  = curves_[(k + stride) % m];
  const auto& behind = curves_[(k + m - stride % m) % m];
  const double inv   = static_cast<double>(m) / (2.0 * static_cast<double>(stride));
  PeriodicVectorField v(n());
  for (std::size_t i = 0; i < v.size(); ++i) { v[i] = (ahead[i] - behind[i]) * inv; }
  return v;
}

CurvePath CurvePath::reversed() const {
  const std::size_t m = curves_.size();
  std::vector<ClosedCurve> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) { out.push_back(curves_[(m - k) % m]); }
  return CurvePath(Trusted{}, std::move(out));
}

LoopIntegral loop_integral_sv(const CurvePath& path, unsigned jobs) { return integrate_loop(path, jobs, sv_frame); }

LoopIntegral loop_integral_mm(const CurvePath& path, unsigned jobs) { return integrate_loop(path, jobs, mm_frame); }

}  // namespace curveflow
