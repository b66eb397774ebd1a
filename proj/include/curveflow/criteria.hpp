#pragma once

// Conservativity functionals for curvature-driven velocity fields on curve
// space: pointwise criteria evaluated on a single curve, and loop integrals of
// the pairing one-form over closed paths of curves.
//
// All pointwise criteria use the constant-speed parametrization of the input
// over [0, 2pi] (speed l / 2pi, not unit speed). D2 below is d^2/dtheta^2 in
// that parametrization. The arclength ("s") forms are related by
//   theta-form = (l / 2pi)^3 * s-form  for the translation criterion,
//   theta-form = (l / 2pi)^5 * s-form  for the cubic criterion.

#include <cstddef>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

// Speed coefficient of variation above which the criteria resample the input
// before evaluating.
inline constexpr double kCriterionResampleThreshold = 1e-9;

// Returns c itself when it is already constant-speed, otherwise its
// constant-speed reparametrization.
ClosedCurve constant_speed_form(const ClosedCurve& c);

// int |Phi|^2 |D2 Phi|^2 dtheta - (1/2pi) int |Phi|^2 dtheta int |D2 Phi|^2 dtheta
double criterion_sv(const ClosedCurve& c);

// int (Phi.u) |D2 Phi|^2 dtheta - (1/2pi) int (Phi.u) dtheta int |D2 Phi|^2 dtheta,
// u normalized internally. Throws InvalidInput for u = 0.
double criterion_sv_translation(const ClosedCurve& c, Vec2 u);

// int Phi.u kappa^2 ds - (1/l) int Phi.u ds int kappa^2 ds.
double criterion_sv_translation_arclength(const ClosedCurve& c, Vec2 u);

// int |D2 Phi|^2 D2 Phi dtheta.
Vec2 criterion_mm(const ClosedCurve& c);

// int kappa^3 N ds.
Vec2 criterion_mm_arclength(const ClosedCurve& c);

// The time-invariant quantity of a perimeter-one curve, both as the double
// integral  sum G(theta, xi) |D2 Phi(xi)|^2 (D2 Phi . Phi)(theta)  against the
// Green's kernel and in its reduced single-integral form
//   -(1/2) int |Phi|^2 |D2 Phi|^2 + (1/4pi) int |Phi|^2 int |D2 Phi|^2.
struct QuantityQ {
  double kernel  = 0.0;
  double reduced = 0.0;
};
// Throws InvalidInput unless the perimeter is 1 within 1e-8.
QuantityQ quantity_q(const ClosedCurve& c);

// -- paths in curve space ----------------------------------------------------------

// A closed loop t -> Gamma_t sampled at t_k = k/m, k = 0..m-1, 1-periodic in t.
// Node i of every frame is the same material marker; velocities are centered
// differences of marker positions.
class CurvePath {
 public:
  // frames holds m + 1 samples at t = 0, 1/m, ..., 1. The last frame must
  // coincide with the first node-wise within closure_tolerance times the
  // path's length scale; it is then dropped. Throws InvalidInput otherwise,
  // on grid mismatch, or when m < 4.
  explicit CurvePath(std::vector<ClosedCurve> frames, double closure_tolerance = 1e-9);

  [[nodiscard]] std::size_t m() const { return curves_.size(); }
  [[nodiscard]] std::size_t n() const { return curves_.front().size(); }
  [[nodiscard]] const ClosedCurve& curve(std::size_t k) const { return curves_[k % curves_.size()]; }
  [[nodiscard]] const std::vector<ClosedCurve>& curves() const { return curves_; }

  // (Phi_{k+s} - Phi_{k-s}) / (2 s / m).
  [[nodiscard]] PeriodicVectorField velocity(std::size_t k, std::size_t stride = 1) const;

  // The same loop traversed backwards: frame k becomes frame (m - k) mod m.
  [[nodiscard]] CurvePath reversed() const;

 private:
  struct Trusted {};
  CurvePath(Trusted, std::vector<ClosedCurve> curves) : curves_(std::move(curves)) {}
  std::vector<ClosedCurve> curves_;
};

struct LoopIntegral {
  double value          = 0.0;  // full time integral
  double hv_term        = 0.0;  // the part from H . V alone; telescopes to 0
  double other_term     = 0.0;  // value - hv_term
  double reduced_term   = 0.0;  // independent evaluation of other_term, when one exists
  double error_estimate = 0.0;  // |I_m - I_{m/2}| plus a roundoff floor
  std::size_t m         = 0;
};

// int_0^1 avg_Gamma (H.V + grad Sigma . grad U) dt with V replaced by its
// coherent projection P(V), Sigma the modified-MCF potential and U the
// projection potential. reduced_term is -int avg(Sigma H.V) dt.
// Every frame must be constant-speed. m must be even.
LoopIntegral loop_integral_sv(const CurvePath& path, unsigned jobs = 1);

// int_0^1 int_Gamma (1 + |H|^2) H.V_perp ds dt with V_perp the normal part of
// the marker velocity. other_term is the |H|^2 H.V_perp part. m must be even.
LoopIntegral loop_integral_mm(const CurvePath& path, unsigned jobs = 1);

}  // namespace curveflow
