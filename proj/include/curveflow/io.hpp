#pragma once

// JSON and CSV interchange formats.
//
//   curve    {"n": <int>, "points": [[x0, y0], ..., [x_{n-1}, y_{n-1}]]}
//   polygon  {"vertices": [[x, y], ...], "eps": [e1, ...], "bump_margin": m}
//
// CSV files carry a header row and print every real with "%.12e", so equal
// results give byte-identical files.

#include <iosfwd>
#include <string>

#include "curveflow/counterexamples.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow::io {

std::string format_real(double v);

// Throws InvalidInput on malformed documents, on n != number of points and
// on non-finite coordinates. The curve is returned counterclockwise.
ClosedCurve read_curve_json(std::istream& in);
ClosedCurve read_curve_json_file(const std::string& path);
void write_curve_json(std::ostream& out, const ClosedCurve& c);

// bump_margin is optional. Throws InvalidInput on malformed documents or
// when the spec fails validation.
PolygonSpec read_polygon_json(std::istream& in);

// t,perimeter,area,max_kappa,speed_cv
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// eps,n,value_x,value_y,eps_times_value_x,eps_times_value_y,error_estimate
// followed by one row with eps = 0 holding the extrapolated scaled value.
// For eps_power = 2 the scaled columns are named eps2_times_value_*.
void write_sweep_csv(std::ostream& out, const ExperimentRecord& rec);

}  // namespace curveflow::io
