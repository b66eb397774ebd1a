#pragma once

// Mollified convex polygons: each corner of opening angle alpha is replaced,
// in a rotated frame centred on the vertex, by the graph of u on [-eps, eps]
// with u'' = phi_eps, u'(+-eps) = +-cot(alpha/2), u(+-eps) = cot(alpha/2) eps.
// phi_eps is an even bump equal to K on the plateau |x| < eps - m, with
// exp(-1/t) smoothstep shoulders of width m, and total mass 2 cot(alpha/2).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Even compactly supported bump with exact mass 2 cot(alpha/2).
class Bump {
 public:
  // margin defaults to eps^2. Throws InvalidInput unless 0 < eps < 1,
  // 0 < alpha < pi and 0 < margin <= eps / 2.
  Bump(double eps, double alpha, std::optional<double> margin = std::nullopt);

  double operator()(double x) const;  // phi_eps(x); zero outside [-eps, eps]

  [[nodiscard]] double eps() const { return eps_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double margin() const { return margin_; }
  [[nodiscard]] double plateau() const { return k_; }  // K
  [[nodiscard]] double slope() const { return cot_; }  // cot(alpha/2)

 private:
  double eps_;
  double alpha_;
  double margin_;
  double cot_;
  double k_;
};

Bump bump_phi(double eps, double alpha);

// The corner graph u and its first two derivatives, in closed form on the
// plateau and by Gauss-Legendre tables on the shoulders.
class CornerGraph {
 public:
  explicit CornerGraph(const Bump& bump);

  [[nodiscard]] double u(double x) const;
  [[nodiscard]] double du(double x) const;
  [[nodiscard]] double d2u(double x) const { return bump_(x); }
  [[nodiscard]] const Bump& bump() const { return bump_; }

  // Arclength of the graph from x = 0 to x (odd in x).
  [[nodiscard]] double arclength(double x) const;
  // Inverse of arclength on [-half_length(), half_length()].
  [[nodiscard]] double abscissa(double s) const;
  [[nodiscard]] double half_length() const { return half_length_; }

  // Integral over [-eps, eps] of g(u', u'') dx, split at the plateau edges.
  [[nodiscard]] double integrate(const std::function<double(double, double)>& g) const;

 private:
  // On the right shoulder x = eps - m t, t in [0, 1].
  [[nodiscard]] double shoulder_du(double t) const;
  [[nodiscard]] double shoulder_u(double t) const;
  [[nodiscard]] double shoulder_arclength(double t) const;  // from t = 0 (outer end) to t
  [[nodiscard]] double plateau_arclength(double y) const;   // from 0 to y >= 0

  Bump bump_;
  double plateau_end_;      // eps - m
  double plateau_offset_;   // u(0)
  double shoulder_length_;  // arclength of one shoulder
  double half_length_;
  std::vector<double> panel_length_;  // cumulative shoulder arclength at panel edges
};

CornerGraph corner_graph(double eps, double alpha);

// c(alpha) = cot(alpha/2) * int_{-cot}^{cot} (1 + x^2)^{-5/2} dx.
double corner_energy_constant(double alpha);
// int kappa^2 ds over one mollified corner.
double corner_energy_numeric(double alpha, double eps);
// int (u'')^3 / (1 + u'^2)^{9/2} dx over one mollified corner.
double corner_cubed_numeric(double alpha, double eps);

struct PolygonSpec {
  std::vector<Vec2> vertices;          // counterclockwise, convex
  std::vector<double> eps;             // mollification half-width per vertex
  std::optional<double> bump_margin;   // absolute shoulder width; eps_i^2 when unset
};

PolygonSpec fig1_spec(double eps);  // right triangle, vertex centroid at the origin
PolygonSpec fig2_spec(double eps, double apex_scale = 0.2);

// Throws InvalidInput when the polygon is not convex and counterclockwise,
// when some eps is not below a third of its adjacent edges, or when corner
// windows overlap.
void validate(const PolygonSpec& spec);

// Exact perimeter of the mollified polygon.
double mollified_perimeter(const PolygonSpec& spec);

// n constant-speed samples of the mollified polygon, placed at exact
// arclength positions. Node 0 sits at the middle of the first corner.
// Throws InvalidInput when fewer than 32 nodes land in some corner window.
ClosedCurve mollified_polygon(const PolygonSpec& spec, std::size_t n);

// Smallest power of two resolving every shoulder with at least
// nodes_per_shoulder samples.
std::size_t default_resolution(const PolygonSpec& spec, double nodes_per_shoulder = 24.0);

// -- sweeps ------------------------------------------------------------------------

struct SweepRow {
  double eps          = 0.0;
  std::size_t n       = 0;
  Vec2 value;                // s-form criterion, both components
  double error_estimate = 0.0;  // |value(n) - value(n/2)|
};

struct ExperimentRecord {
  std::string name;
  int eps_power = 1;  // scaled value is eps^eps_power * value
  std::vector<SweepRow> rows;
  Vec2 extrapolated;   // eps -> 0 limit of the scaled value
  Vec2 fit_residual;   // third-point residual of the two-point fit, if available

  [[nodiscard]] Vec2 scaled(const SweepRow& r) const;
};

// Fig. 1: int Phi kappa^2 ds - (1/p) int Phi ds int kappa^2 ds per eps.
// eps_list must be strictly decreasing. fixed_n = 0 selects
// default_resolution per eps.
ExperimentRecord sv_contradiction_sweep(const std::vector<double>& eps_list, unsigned jobs = 1,
                                        std::size_t fixed_n = 0);

// Fig. 2: int kappa^3 N ds per eps.
ExperimentRecord mm_divergence_sweep(const std::vector<double>& eps_list, unsigned jobs = 1,
                                     std::size_t fixed_n = 0);

// Two-point fit value = a / eps + b through the last two entries.
struct InverseFit {
  double a        = 0.0;
  double b        = 0.0;
  double residual = 0.0;  // misfit at the first entry when three or more are given
};
InverseFit fit_inverse_eps(const std::vector<double>& eps, const std::vector<double>& values);

}  // namespace curveflow
