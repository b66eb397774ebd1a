#include "curveflow/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/counterexamples.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/parallel.hpp"

namespace curveflow {
namespace {

constexpr double kPi          = std::numbers::pi;
constexpr long kAlignWindow   = 8;

double ease(double tau) { return 0.5 * (1.0 - std::cos(kPi * tau)); }

// Cyclic shift of cur that best matches prev node-wise, searched over a small
// window around zero.
ClosedCurve align_to(const ClosedCurve& prev, const ClosedCurve& cur) {
  const auto n    = static_cast<long>(cur.size());
  long best_shift = 0;
  double best     = std::numeric_limits<double>::infinity();
  for (long s = -kAlignWindow; s <= kAlignWindow; ++s) {
    double d = 0.0;
    for (long i = 0; i < n; ++i) { d += norm2(cur[static_cast<std::size_t>(((i + s) % n + n) % n)] - prev[static_cast<std::size_t>(i)]); }
    if (d < best) {
      best       = d;
      best_shift = s;
    }
  }
  if (best_shift == 0) { return cur; }
  return shifted_start(cur, static_cast<std::size_t>((best_shift % n + n) % n));
}

ClosedCurve with_perimeter(const ClosedCurve& c, double target) { return scaled(c, target / perimeter(c)); }

// Circle of perimeter 1 about center whose node 0 points the same way as
// node 0 of shape.
ClosedCurve matching_circle(const ClosedCurve& shape, Vec2 center) {
  const std::size_t n = shape.size();
  const Vec2 d        = shape[0] - center;
  const double phase  = std::atan2(d.y, d.x);
  const double r      = 1.0 / (2.0 * kPi);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = shape.theta(i) + phase;
    pts[i]         = center + r * Vec2{std::cos(t), std::sin(t)};
  }
  return ClosedCurve(std::move(pts));
}

std::size_t default_n(LoopRecipe recipe, const LoopOptions& o) {
  if (o.n > 0) { return o.n; }
  switch (recipe) {
    case LoopRecipe::CircleScale:
    case LoopRecipe::ShapeScale: return 256;
    case LoopRecipe::MixedSv: return default_resolution(fig1_spec(o.eps), 8.0);
    case LoopRecipe::MixedMm: return default_resolution(fig2_spec(o.eps), 8.0);
  }
  return 256;
}

// Four legs: morph at perimeter 1, scale to 2, morph back at 2, scale to 1.
std::function<ClosedCurve(double)> four_leg_loop(ClosedCurve shape, ClosedCurve circle) {
  return [shape = std::move(shape), circle = std::move(circle)](double t) {
    const double leg = std::min(3.0, std::floor(4.0 * t));
    const double tau = 4.0 * t - leg;
    auto morph       = [&](double w, double length) {
      if (w <= 0.0) { return with_perimeter(circle, length); }
      if (w >= 1.0) { return with_perimeter(shape, length); }
      std::vector<Vec2> pts(shape.size());
      for (std::size_t i = 0; i < pts.size(); ++i) { pts[i] = (1.0 - w) * circle[i] + w * shape[i]; }
      return with_perimeter(reparametrize_constant_speed(ClosedCurve(std::move(pts))), length);
    };
    switch (static_cast<int>(leg)) {
      case 0: return morph(ease(tau), 1.0);
      case 1: return with_perimeter(shape, 1.0 + ease(tau));
      case 2: return morph(1.0 - ease(tau), 2.0);
      default: return with_perimeter(circle, 2.0 - ease(tau));
    }
  };
}

}  // namespace

std::string_view to_string(LoopRecipe r) {
  switch (r) {
    case LoopRecipe::CircleScale: return "circle-scale";
    case LoopRecipe::ShapeScale: return "shape-scale";
    case LoopRecipe::MixedSv: return "mixed-sv";
    case LoopRecipe::MixedMm: return "mixed-mm";
  }
  return "unknown";
}

LoopRecipe parse_loop_recipe(std::string_view name) {
  for (auto r : {LoopRecipe::CircleScale, LoopRecipe::ShapeScale, LoopRecipe::MixedSv, LoopRecipe::MixedMm}) {
    if (name == to_string(r)) { return r; }
  }
  throw InvalidInput("unknown loop recipe '" + std::string(name) + "'");
}

CurvePath build_path(const std::function<ClosedCurve(double)>& frame_at, std::size_t m) {
  if (m < 4) { throw InvalidInput("loop needs m >= 4 time samples"); }
  std::vector<ClosedCurve> frames;
  frames.reserve(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    auto c = constant_speed_form(frame_at(static_cast<double>(k) / static_cast<double>(m)));
    if (!frames.empty()) { c = align_to(frames.back(), c); }
    frames.push_back(std::move(c));
  }
  return CurvePath(std::move(frames));
}

ClosedCurve loop_keyframe_shape(LoopRecipe recipe, const LoopOptions& o) {
  const std::size_t n = default_n(recipe, o);
  switch (recipe) {
    case LoopRecipe::CircleScale: return make_circle(1.0 / (2.0 * kPi), {0.0, 0.0}, n);
    case LoopRecipe::ShapeScale:
      return with_perimeter(reparametrize_constant_speed(make_ellipse(2.0, 1.0, n)), 1.0);
    case LoopRecipe::MixedSv: return with_perimeter(mollified_polygon(fig1_spec(o.eps), n), 1.0);
    case LoopRecipe::MixedMm: {
      const auto c = mollified_polygon(fig2_spec(o.eps), n);
      Vec2 mean{};
      for (const auto& p : c.points()) { mean += p; }
      return with_perimeter(translated(c, -(mean / static_cast<double>(n))), 1.0);
    }
  }
  throw InvalidInput("unknown loop recipe");
}

CurvePath make_loop(LoopRecipe recipe, const LoopOptions& o) {
  if (o.m % 2 != 0) { throw InvalidInput("loop needs an even number of time samples"); }
  const std::size_t n = default_n(recipe, o);
  std::function<ClosedCurve(double)> frame_at;
  switch (recipe) {
    case LoopRecipe::CircleScale:
      frame_at = [n](double t) { return make_circle(1.0 + 0.3 * std::sin(2.0 * kPi * t), {0.0, 0.0}, n); };
      break;
    case LoopRecipe::ShapeScale: {
      auto shape = loop_keyframe_shape(recipe, o);
      frame_at   = [shape](double t) { return scaled(shape, 1.0 + 0.3 * std::sin(2.0 * kPi * t)); };
      break;
    }
    case LoopRecipe::MixedSv:
    case LoopRecipe::MixedMm: {
      auto shape  = loop_keyframe_shape(recipe, o);
      auto circle = matching_circle(shape, {0.0, 0.0});
      frame_at    = four_leg_loop(std::move(shape), std::move(circle));
      break;
    }
  }

  // Every recipe pins node 0 (angle zero, or the marker kept fixed by
  // resampling), so frames already share a phase and need no alignment.
  std::vector<std::optional<ClosedCurve>> raw(o.m + 1);
  parallel_for(o.m + 1, o.jobs, [&](std::size_t k) {
    raw[k] = constant_speed_form(frame_at(static_cast<double>(k) / static_cast<double>(o.m)));
  });
  std::vector<ClosedCurve> frames;
  frames.reserve(o.m + 1);
  for (auto& f : raw) { frames.push_back(std::move(*f)); }
  return CurvePath(std::move(frames));
}

LoopReport run_loop(LoopRecipe recipe, const LoopOptions& o) {
  const CurvePath path = make_loop(recipe, o);
  LoopReport report;
  report.recipe   = recipe;
  report.cubic    = recipe == LoopRecipe::MixedMm;
  report.integral = report.cubic ? loop_integral_mm(path, o.jobs) : loop_integral_sv(path, o.jobs);
  return report;
}

}  // namespace curveflow
