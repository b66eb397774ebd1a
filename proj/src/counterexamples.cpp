#include "curveflow/counterexamples.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curveflow/criteria.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/parallel.hpp"

namespace curveflow {
namespace {

constexpr double kPi          = std::numbers::pi;
constexpr std::size_t kPanels = 64;
using Gauss                   = boost::math::quadrature::gauss<double, 16>;

// exp(-1/t) smoothstep on [0, 1]: S(t) = f(t) / (f(t) + f(1 - t)).
double smoothstep(double t) {
  if (t <= 0.0) { return 0.0; }
  if (t >= 1.0) { return 1.0; }
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

// Cumulative tables of F1(t) = int_0^t S and M(t) = int_0^t tau S(tau) at
// panel edges; F2(t) = int_0^t F1 = t F1(t) - M(t).
struct SmoothstepTables {
  std::array<double, kPanels + 1> f1{};
  std::array<double, kPanels + 1> moment{};

  SmoothstepTables() {
    for (std::size_t k = 0; k < kPanels; ++k) {
      const double a = static_cast<double>(k) / kPanels;
      const double b = static_cast<double>(k + 1) / kPanels;
      f1[k + 1]      = f1[k] + Gauss::integrate(smoothstep, a, b);
      moment[k + 1]  = moment[k] + Gauss::integrate([](double t) { return t * smoothstep(t); }, a, b);
    }
  }
};

const SmoothstepTables& tables() {
  static const SmoothstepTables t;
  return t;
}

std::size_t panel_of(double t) {
  return std::min<std::size_t>(kPanels - 1, static_cast<std::size_t>(std::max(0.0, t) * kPanels));
}

double step_integral(double t) {
  if (t <= 0.0) { return 0.0; }
  if (t >= 1.0) { return 0.5; }
  const std::size_t k = panel_of(t);
  return tables().f1[k] + Gauss::integrate(smoothstep, static_cast<double>(k) / kPanels, t);
}

double step_double_integral(double t) {
  if (t <= 0.0) { return 0.0; }
  const double tc     = std::min(t, 1.0);
  const std::size_t k = panel_of(tc);
  const double moment =
      tables().moment[k] +
      Gauss::integrate([](double s) { return s * smoothstep(s); }, static_cast<double>(k) / kPanels, tc);
  // Beyond t = 1, F1 = 1/2 exactly.
  return tc * step_integral(tc) - moment + 0.5 * (t - tc);
}

double cot_half(double alpha) { return 1.0 / std::tan(0.5 * alpha); }

Vec2 normalized(Vec2 v) { return v / norm(v); }

// Local corner frame at a polygon vertex.
struct Corner {
  Vec2 vertex;
  Vec2 d_in;
  Vec2 d_out;
  Vec2 ex;
  Vec2 b;
  double alpha  = 0.0;
  double retreat = 0.0;  // edge length consumed on each arm
};

std::vector<Corner> corners_of(const PolygonSpec& spec) {
  const std::size_t k = spec.vertices.size();
  std::vector<Corner> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 prev = spec.vertices[(i + k - 1) % k];
    const Vec2 cur  = spec.vertices[i];
    const Vec2 next = spec.vertices[(i + 1) % k];
    Corner c;
    c.vertex      = cur;
    c.d_in        = normalized(cur - prev);
    c.d_out       = normalized(next - cur);
    c.alpha       = std::atan2(cross(c.d_in, c.d_out), -dot(c.d_in, c.d_out));
    const double sh = std::sin(0.5 * c.alpha);
    const double ch = std::cos(0.5 * c.alpha);
    c.ex          = (c.d_in + c.d_out) / (2.0 * sh);
    c.b           = (c.d_out - c.d_in) / (2.0 * ch);
    c.retreat     = spec.eps[i] / sh;
    out[i]        = c;
  }
  return out;
}

std::optional<double> margin_for(const PolygonSpec& spec, std::size_t i) {
  if (spec.bump_margin) { return spec.bump_margin; }
  return spec.eps[i] * spec.eps[i];
}

// A piece of the closed curve: either a straight edge or a corner graph
// traversed over a range of signed arclength about its centre.
struct Piece {
  double s_begin    = 0.0;
  double s_end      = 0.0;
  bool is_corner    = false;
  std::size_t index = 0;    // corner or edge index
  double r_begin    = 0.0;  // corner: local arclength at s_begin
  Vec2 start;               // edge: first point
  Vec2 direction;           // edge: unit direction
};

struct Assembly {
  std::vector<Corner> corners;
  std::vector<CornerGraph> graphs;
  std::vector<Piece> pieces;
  double length = 0.0;
};

Assembly assemble(const PolygonSpec& spec) {
  validate(spec);
  Assembly a;
  a.corners           = corners_of(spec);
  const std::size_t k = a.corners.size();
  a.graphs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    a.graphs.emplace_back(Bump(spec.eps[i], a.corners[i].alpha, margin_for(spec, i)));
  }

  double s         = 0.0;
  auto add_corner  = [&](std::size_t i, double r_from, double r_to) {
    Piece p;
    p.is_corner = true;
    p.index     = i;
    p.s_begin   = s;
    p.r_begin   = r_from;
    s += r_to - r_from;
    p.s_end     = s;
    a.pieces.push_back(p);
  };
  for (std::size_t i = 0; i < k; ++i) {
    const double half = a.graphs[i].half_length();
    if (i == 0) {
      add_corner(0, 0.0, half);
    } else {
      add_corner(i, -half, half);
    }
    const std::size_t j = (i + 1) % k;
    Piece e;
    e.index     = i;
    e.direction = a.corners[i].d_out;
    e.start     = a.corners[i].vertex + a.corners[i].retreat * e.direction;
    const Vec2 stop = a.corners[j].vertex - a.corners[j].retreat * e.direction;
    e.s_begin   = s;
    s += norm(stop - e.start);
    e.s_end     = s;
    a.pieces.push_back(e);
  }
  add_corner(0, -a.graphs[0].half_length(), 0.0);
  a.length = s;
  return a;
}

Vec2 point_at(const Assembly& a, double s) {
  const auto it = std::upper_bound(a.pieces.begin(), a.pieces.end(), s,
                                   [](double value, const Piece& p) { return value < p.s_end; });
  const Piece& p = it == a.pieces.end() ? a.pieces.back() : *it;
  const double local = std::clamp(s - p.s_begin, 0.0, p.s_end - p.s_begin);
  if (!p.is_corner) { return p.start + local * p.direction; }
  const Corner& c       = a.corners[p.index];
  const CornerGraph& g  = a.graphs[p.index];
  const double x        = g.abscissa(p.r_begin + local);
  return c.vertex + x * c.ex + g.u(x) * c.b;
}

std::size_t next_pow2(double x) {
  const auto v = static_cast<std::size_t>(std::ceil(std::max(x, 16.0)));
  return std::bit_ceil(v);
}

SweepRow sweep_row(const PolygonSpec& spec, double eps, std::size_t fixed_n, bool cubic) {
  const std::size_t n = fixed_n > 0 ? fixed_n : default_resolution(spec);
  auto evaluate       = [&](std::size_t count) {
    const auto c = mollified_polygon(spec, count);
    if (cubic) { return criterion_mm_arclength(c); }
    return Vec2{criterion_sv_translation_arclength(c, {1.0, 0.0}), criterion_sv_translation_arclength(c, {0.0, 1.0})};
  };
  SweepRow row;
  row.eps            = eps;
  row.n              = n;
  row.value          = evaluate(n);
  row.error_estimate = norm(row.value - evaluate(n / 2));
  return row;
}

ExperimentRecord run_sweep(const std::vector<double>& eps_list, unsigned jobs, std::size_t fixed_n, bool cubic) {
  if (eps_list.empty()) { throw InvalidInput("eps list is empty"); }
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || !std::isfinite(eps_list[i])) { throw InvalidInput("eps values must be positive"); }
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) { throw InvalidInput("eps list must be strictly decreasing"); }
  }
  std::vector<PolygonSpec> specs;
  for (double e : eps_list) {
    specs.push_back(cubic ? fig2_spec(e) : fig1_spec(e));
    validate(specs.back());
  }

  ExperimentRecord rec;
  rec.name      = cubic ? "fig2_cubic_curvature" : "fig1_translation_criterion";
  rec.eps_power = cubic ? 2 : 1;
  rec.rows.resize(eps_list.size());
  parallel_for(eps_list.size(), jobs,
               [&](std::size_t i) { rec.rows[i] = sweep_row(specs[i], eps_list[i], fixed_n, cubic); });

  const std::size_t r = rec.rows.size();
  if (r >= 2) {
    const double e1 = rec.rows[r - 2].eps;
    const double e2 = rec.rows[r - 1].eps;
    const Vec2 s1   = rec.scaled(rec.rows[r - 2]);
    const Vec2 s2   = rec.scaled(rec.rows[r - 1]);
    // scaled(eps) = L + c eps through the two smallest eps.
    rec.extrapolated = (e1 * s2 - e2 * s1) / (e1 - e2);
    if (r >= 3) {
      const Vec2 slope   = (s1 - s2) / (e1 - e2);
      const SweepRow& f  = rec.rows[r - 3];
      rec.fit_residual   = rec.scaled(f) - (rec.extrapolated + f.eps * slope);
    }
  } else {
    rec.extrapolated = rec.scaled(rec.rows.front());
  }
  return rec;
}

}  // namespace

// -- bump ---------------------------------------------------------------------------

Bump::Bump(double eps, double alpha, std::optional<double> margin)
    : eps_(eps), alpha_(alpha), margin_(margin.value_or(eps * eps)), cot_(0.0), k_(0.0) {
  if (!(eps > 0.0 && eps < 1.0)) { throw InvalidInput("bump: eps must lie in (0, 1)"); }
  if (!(alpha > 0.0 && alpha < kPi)) { throw InvalidInput("bump: corner angle must lie in (0, pi)"); }
  if (!(margin_ > 0.0 && margin_ <= 0.5 * eps)) { throw InvalidInput("bump: margin must lie in (0, eps/2]"); }
  cot_ = cot_half(alpha);
  // Plateau of width 2(eps - m) plus two shoulders of mass m/2 each.
  k_ = 2.0 * cot_ / (2.0 * eps_ - margin_);
}

double Bump::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax >= eps_) { return 0.0; }
  if (ax <= eps_ - margin_) { return k_; }
  return k_ * smoothstep((eps_ - ax) / margin_);
}

Bump bump_phi(double eps, double alpha) { return Bump(eps, alpha); }

// -- corner graph ------------------------------------------------------------------

CornerGraph::CornerGraph(const Bump& bump)
    : bump_(bump), plateau_end_(bump.eps() - bump.margin()), plateau_offset_(0.0), shoulder_length_(0.0),
      half_length_(0.0), panel_length_(kPanels + 1, 0.0) {
  const double k = bump_.plateau();
  plateau_offset_ = shoulder_u(1.0) - 0.5 * k * plateau_end_ * plateau_end_;
  const double m  = bump_.margin();
  for (std::size_t p = 0; p < kPanels; ++p) {
    const double a = static_cast<double>(p) / kPanels;
    const double b = static_cast<double>(p + 1) / kPanels;
    panel_length_[p + 1] =
        panel_length_[p] + m * Gauss::integrate([&](double t) { return std::hypot(1.0, shoulder_du(t)); }, a, b);
  }
  shoulder_length_ = panel_length_[kPanels];
  half_length_     = plateau_arclength(plateau_end_) + shoulder_length_;
}

double CornerGraph::shoulder_du(double t) const {
  return bump_.slope() - bump_.plateau() * bump_.margin() * step_integral(t);
}

double CornerGraph::shoulder_u(double t) const {
  const double m = bump_.margin();
  return bump_.slope() * (bump_.eps() - m * t) + bump_.plateau() * m * m * step_double_integral(t);
}

double CornerGraph::shoulder_arclength(double t) const {
  if (t <= 0.0) { return 0.0; }
  if (t >= 1.0) { return shoulder_length_; }
  const std::size_t p = panel_of(t);
  return panel_length_[p] + bump_.margin() * Gauss::integrate([&](double tau) { return std::hypot(1.0, shoulder_du(tau)); },
                                                             static_cast<double>(p) / kPanels, t);
}

double CornerGraph::plateau_arclength(double y) const {
  const double k  = bump_.plateau();
  const double ky = k * y;
  return 0.5 * y * std::sqrt(1.0 + ky * ky) + std::asinh(ky) / (2.0 * k);
}

double CornerGraph::u(double x) const {
  const double ax = std::abs(x);
  if (ax >= bump_.eps()) { return bump_.slope() * ax; }
  if (ax <= plateau_end_) { return 0.5 * bump_.plateau() * ax * ax + plateau_offset_; }
  return shoulder_u((bump_.eps() - ax) / bump_.margin());
}

double CornerGraph::du(double x) const {
  const double ax   = std::abs(x);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  if (ax >= bump_.eps()) { return sign * bump_.slope(); }
  if (ax <= plateau_end_) { return bump_.plateau() * x; }
  return sign * shoulder_du((bump_.eps() - ax) / bump_.margin());
}

double CornerGraph::arclength(double x) const {
  const double ax   = std::min(std::abs(x), bump_.eps());
  const double sign = x < 0.0 ? -1.0 : 1.0;
  if (ax <= plateau_end_) { return sign * plateau_arclength(ax); }
  const double t = (bump_.eps() - ax) / bump_.margin();
  return sign * (half_length_ - shoulder_arclength(t));
}

double CornerGraph::abscissa(double s) const {
  const double as   = std::abs(s);
  const double sign = s < 0.0 ? -1.0 : 1.0;
  if (as > half_length_ * (1.0 + 1e-12)) { throw InvalidInput("corner arclength out of range"); }
  const double plateau_len = plateau_arclength(plateau_end_);
  const double k           = bump_.plateau();

  if (as <= plateau_len) {
    // Safeguarded Newton for plateau_arclength(y) = as, y in [0, plateau_end].
    double lo = 0.0, hi = plateau_end_;
    double y  = std::min(as, plateau_end_);
    for (int it = 0; it < 100; ++it) {
      const double f = plateau_arclength(y) - as;
      if (f > 0.0) { hi = y; } else { lo = y; }
      double next = y - f / std::hypot(1.0, k * y);
      if (!(next > lo && next < hi)) { next = 0.5 * (lo + hi); }
      if (std::abs(next - y) <= 1e-16 * std::max(1e-300, plateau_end_)) { return sign * next; }
      y = next;
    }
    return sign * y;
  }

  // Shoulder: find t with shoulder_arclength(t) = half_length - as.
  const double target = std::max(0.0, half_length_ - as);
  double lo = 0.0, hi = 1.0;
  double t  = std::clamp(target / shoulder_length_, 0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const double f = shoulder_arclength(t) - target;
    if (f > 0.0) { hi = t; } else { lo = t; }
    double next = t - f / (bump_.margin() * std::hypot(1.0, shoulder_du(t)));
    if (!(next > lo && next < hi)) { next = 0.5 * (lo + hi); }
    if (std::abs(next - t) <= 4e-16) {
      t = next;
      break;
    }
    t = next;
  }
  return sign * (bump_.eps() - bump_.margin() * t);
}

double CornerGraph::integrate(const std::function<double(double, double)>& g) const {
  const double k = bump_.plateau();
  double total   = 0.0;
  for (std::size_t p = 0; p < kPanels; ++p) {
    const double a = -plateau_end_ + 2.0 * plateau_end_ * static_cast<double>(p) / kPanels;
    const double b = -plateau_end_ + 2.0 * plateau_end_ * static_cast<double>(p + 1) / kPanels;
    total += Gauss::integrate([&](double x) { return g(k * x, k); }, a, b);
  }
  const double m = bump_.margin();
  for (std::size_t p = 0; p < kPanels; ++p) {
    const double a = static_cast<double>(p) / kPanels;
    const double b = static_cast<double>(p + 1) / kPanels;
    total += m * Gauss::integrate(
                     [&](double t) {
                       const double d1 = shoulder_du(t);
                       const double d2 = k * smoothstep(t);
                       return g(d1, d2) + g(-d1, d2);
                     },
                     a, b);
  }
  return total;
}

CornerGraph corner_graph(double eps, double alpha) { return CornerGraph(Bump(eps, alpha)); }

// -- corner asymptotics ------------------------------------------------------------

double corner_energy_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi)) { throw InvalidInput("corner angle must lie in (0, pi)"); }
  const double c = cot_half(alpha);
  // Antiderivative of (1 + x^2)^{-5/2}.
  const double f = c * (3.0 + 2.0 * c * c) / (3.0 * std::pow(1.0 + c * c, 1.5));
  return c * 2.0 * f;
}

double corner_energy_numeric(double alpha, double eps) {
  const CornerGraph g = corner_graph(eps, alpha);
  return g.integrate([](double d1, double d2) { return d2 * d2 / std::pow(1.0 + d1 * d1, 2.5); });
}

double corner_cubed_numeric(double alpha, double eps) {
  const CornerGraph g = corner_graph(eps, alpha);
  return g.integrate([](double d1, double d2) { return d2 * d2 * d2 / std::pow(1.0 + d1 * d1, 4.5); });
}

InverseFit fit_inverse_eps(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.size() < 2) {
    throw InvalidInput("fit_inverse_eps: need at least two matching samples");
  }
  const std::size_t r = eps.size();
  const double x1 = 1.0 / eps[r - 2], x2 = 1.0 / eps[r - 1];
  InverseFit fit;
  fit.a = (values[r - 2] - values[r - 1]) / (x1 - x2);
  fit.b = values[r - 1] - fit.a * x2;
  if (r >= 3) { fit.residual = values[r - 3] - (fit.a / eps[r - 3] + fit.b); }
  return fit;
}

// -- polygons ----------------------------------------------------------------------

PolygonSpec fig1_spec(double eps) {
  const double r3 = std::sqrt(3.0);
  return {{{-1.0 / 3.0, -r3 / 3.0}, {2.0 / 3.0, -r3 / 3.0}, {-1.0 / 3.0, 2.0 * r3 / 3.0}}, {eps, eps, eps}, std::nullopt};
}

PolygonSpec fig2_spec(double eps, double apex_scale) {
  return {{{0.0, 1.0}, {-1.0, 0.0}, {1.0, 0.0}}, {apex_scale, eps, eps}, std::nullopt};
}

void validate(const PolygonSpec& spec) {
  const std::size_t k = spec.vertices.size();
  if (k < 3) { throw InvalidInput("polygon needs at least 3 vertices"); }
  if (spec.eps.size() != k) { throw InvalidInput("polygon needs one eps per vertex"); }
  for (const auto& v : spec.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) { throw InvalidInput("polygon vertex is not finite"); }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 e_prev = spec.vertices[i] - spec.vertices[(i + k - 1) % k];
    const Vec2 e_next = spec.vertices[(i + 1) % k] - spec.vertices[i];
    if (!(norm(e_prev) > 0.0) || !(norm(e_next) > 0.0)) { throw InvalidInput("polygon has repeated vertices"); }
    if (!(cross(e_prev, e_next) > 0.0)) {
      throw InvalidInput("polygon must be convex and counterclockwise (corner " + std::to_string(i) + ")");
    }
    const double eps = spec.eps[i];
    if (!(eps > 0.0) || !(eps < std::min(norm(e_prev), norm(e_next)) / 3.0)) {
      throw InvalidInput("eps at corner " + std::to_string(i) + " must be positive and below a third of its edges");
    }
    if (spec.bump_margin && !(*spec.bump_margin > 0.0 && *spec.bump_margin <= 0.5 * eps)) {
      throw InvalidInput("bump margin must lie in (0, eps/2] at every corner");
    }
  }
  const auto corners = corners_of(spec);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    const double len    = norm(spec.vertices[j] - spec.vertices[i]);
    if (!(corners[i].retreat + corners[j].retreat < len)) {
      throw InvalidInput("corner windows overlap on edge " + std::to_string(i));
    }
  }
}

double mollified_perimeter(const PolygonSpec& spec) { return assemble(spec).length; }

ClosedCurve mollified_polygon(const PolygonSpec& spec, std::size_t n) {
  const Assembly a = assemble(spec);
  const double h   = a.length / static_cast<double>(n);
  for (std::size_t i = 0; i < a.graphs.size(); ++i) {
    if (2.0 * a.graphs[i].half_length() < 32.0 * h) {
      throw InvalidInput("mollified_polygon: n = " + std::to_string(n) + " leaves fewer than 32 nodes in corner " +
                         std::to_string(i));
    }
  }
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) { pts[i] = point_at(a, h * static_cast<double>(i)); }
  return ClosedCurve(std::move(pts));
}

std::size_t default_resolution(const PolygonSpec& spec, double nodes_per_shoulder) {
  const Assembly a    = assemble(spec);
  double finest       = std::numeric_limits<double>::infinity();
  double corner_min   = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.graphs.size(); ++i) {
    finest     = std::min(finest, a.graphs[i].bump().margin());
    corner_min = std::min(corner_min, 2.0 * a.graphs[i].half_length());
  }
  return std::max(next_pow2(nodes_per_shoulder * a.length / finest), next_pow2(64.0 * a.length / corner_min));
}

Vec2 ExperimentRecord::scaled(const SweepRow& r) const { return std::pow(r.eps, eps_power) * r.value; }

ExperimentRecord sv_contradiction_sweep(const std::vector<double>& eps_list, unsigned jobs, std::size_t fixed_n) {
  return run_sweep(eps_list, jobs, fixed_n, false);
}

ExperimentRecord mm_divergence_sweep(const std::vector<double>& eps_list, unsigned jobs, std::size_t fixed_n) {
  return run_sweep(eps_list, jobs, fixed_n, true);
}

}  // namespace curveflow
