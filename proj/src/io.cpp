#include "curveflow/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "curveflow/errors.hpp"

namespace curveflow::io {
namespace {

using nlohmann::json;

json parse(std::istream& in, const char* what) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": malformed JSON: " + e.what());
  }
}

Vec2 read_point(const json& p, const char* what) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
    throw InvalidInput(std::string(what) + ": every point must be a pair of numbers");
  }
  const Vec2 v{p[0].get<double>(), p[1].get<double>()};
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) { throw InvalidInput(std::string(what) + ": non-finite coordinate"); }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

ClosedCurve read_curve_json(std::istream& in) {
  const json doc = parse(in, "curve");
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("points")) {
    throw InvalidInput("curve: expected an object with \"n\" and \"points\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) {
    throw InvalidInput("curve: \"n\" must be a nonnegative integer");
  }
  const auto& pts = doc["points"];
  if (!pts.is_array()) { throw InvalidInput("curve: \"points\" must be an array"); }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  if (pts.size() != n) {
    throw InvalidInput("curve: n = " + std::to_string(n) + " but " + std::to_string(pts.size()) + " points given");
  }
  std::vector<Vec2> out;
  out.reserve(n);
  for (const auto& p : pts) { out.push_back(read_point(p, "curve")); }
  return oriented_ccw(ClosedCurve(std::move(out)));
}

ClosedCurve read_curve_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) { throw InvalidInput("cannot open curve file '" + path + "'"); }
  return read_curve_json(in);
}

void write_curve_json(std::ostream& out, const ClosedCurve& c) {
  out << "{\"n\": " << c.size() << ", \"points\": [";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << (i == 0 ? "" : ", ") << '[' << format_real(c[i].x) << ", " << format_real(c[i].y) << ']';
  }
  out << "]}\n";
}

PolygonSpec read_polygon_json(std::istream& in) {
  const json doc = parse(in, "polygon");
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("eps")) {
    throw InvalidInput("polygon: expected an object with \"vertices\" and \"eps\"");
  }
  PolygonSpec spec;
  if (!doc["vertices"].is_array() || !doc["eps"].is_array()) {
    throw InvalidInput("polygon: \"vertices\" and \"eps\" must be arrays");
  }
  for (const auto& v : doc["vertices"]) { spec.vertices.push_back(read_point(v, "polygon")); }
  for (const auto& e : doc["eps"]) {
    if (!e.is_number()) { throw InvalidInput("polygon: eps entries must be numbers"); }
    spec.eps.push_back(e.get<double>());
  }
  if (doc.contains("bump_margin") && !doc["bump_margin"].is_null()) {
    if (!doc["bump_margin"].is_number()) { throw InvalidInput("polygon: bump_margin must be a number"); }
    spec.bump_margin = doc["bump_margin"].get<double>();
  }
  validate(spec);
  return spec;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,perimeter,area,max_kappa,speed_cv\n";
  for (const auto& d : traj.diagnostics) {
    out << format_real(d.t) << ',' << format_real(d.perimeter) << ',' << format_real(d.area) << ','
        << format_real(d.max_kappa) << ',' << format_real(d.speed_cv) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const ExperimentRecord& rec) {
  const std::string scaled = rec.eps_power == 1 ? "eps_times_value" : "eps" + std::to_string(rec.eps_power) + "_times_value";
  out << "eps,n,value_x,value_y," << scaled << "_x," << scaled << "_y,error_estimate\n";
  for (const auto& r : rec.rows) {
    const Vec2 s = rec.scaled(r);
    out << format_real(r.eps) << ',' << r.n << ',' << format_real(r.value.x) << ',' << format_real(r.value.y) << ','
        << format_real(s.x) << ',' << format_real(s.y) << ',' << format_real(r.error_estimate) << '\n';
  }
  const double nan = std::nan("");
  out << format_real(0.0) << ",0," << format_real(nan) << ',' << format_real(nan) << ','
      << format_real(rec.extrapolated.x) << ',' << format_real(rec.extrapolated.y) << ','
      << format_real(norm(rec.fit_residual)) << '\n';
}

}  // namespace curveflow::io
