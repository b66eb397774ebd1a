#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"
#include "support.hpp"

using namespace curveflow;
using namespace curveflow::testing;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / ("curveflow_test_" + std::to_string(std::rand()) + ".out");
  const std::string cmd = std::string(CURVEFLOW_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status      = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(out);
  return r;
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto beg = text.rfind('\n', end);
  return text.substr(beg == std::string::npos ? 0 : beg + 1, end - (beg == std::string::npos ? 0 : beg + 1) + 1);
}

double field(const std::string& line, int index) {
  std::stringstream ss(line);
  std::string item;
  for (int i = 0; i <= index; ++i) { std::getline(ss, item, ','); }
  return std::stod(item);
}

}  // namespace

TEST_CASE("curve JSON round trip and validation") {
  const auto e = make_ellipse(2.0, 1.0, 32);
  std::stringstream ss;
  io::write_curve_json(ss, e);
  const auto back = io::read_curve_json(ss);
  CHECK(sup_norm(as_field(back) - as_field(e)) < 1e-11);

  std::stringstream cw;
  io::write_curve_json(cw, reversed(e));
  CHECK(enclosed_area(io::read_curve_json(cw)) > 0.0);

  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return io::read_curve_json(in);
  };
  CHECK_THROWS_AS(parse("{\"n\": 3"), InvalidInput);
  CHECK_THROWS_AS(parse("{\"n\": 17, \"points\": []}"), InvalidInput);
  CHECK_THROWS_AS(parse("{\"points\": []}"), InvalidInput);
  CHECK_THROWS_AS(parse("{\"n\": 1, \"points\": [[1, \"a\"]]}"), InvalidInput);
}

TEST_CASE("polygon JSON") {
  std::stringstream ok("{\"vertices\": [[0,0],[2,0],[0,2]], \"eps\": [0.1, 0.1, 0.1], \"bump_margin\": 0.005}");
  const auto spec = io::read_polygon_json(ok);
  CHECK(spec.vertices.size() == 3);
  CHECK(spec.bump_margin.value() == 0.005);
  std::stringstream bad("{\"vertices\": [[0,0],[0,2],[2,0]], \"eps\": [0.1, 0.1, 0.1]}");
  CHECK_THROWS_AS(io::read_polygon_json(bad), InvalidInput);
}

TEST_CASE("real formatting is fixed") {
  CHECK(io::format_real(1.0) == "1.000000000000e+00");
  CHECK(io::format_real(-0.00125) == "-1.250000000000e-03");
}

TEST_CASE("cli: flow on the shrinking circle") {
  const auto r = run_cli("flow --shape circle --r 1 --n 128 --kind mcf --dt 1e-4 --t-end 0.375");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,perimeter,area,max_kappa,speed_cv\n", 0) == 0);
  CHECK(std::abs(field(last_line(r.out), 1) - kPi) < 1e-4);
}

TEST_CASE("cli: ucmcf on the ellipse keeps nodes uniform") {
  const auto r = run_cli("flow --shape ellipse --a 2 --b 1 --kind ucmcf --dt 1e-4 --t-end 0.02 --reparam-every 0");
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  double worst = 0.0;
  while (std::getline(ss, line)) { worst = std::max(worst, field(line, 4)); }
  CHECK(worst < 1e-4);
}

TEST_CASE("cli: criterion output") {
  const auto sv = run_cli("criterion --shape circle --which sv");
  REQUIRE(sv.code == 0);
  CHECK(std::abs(field(last_line(sv.out), 1)) < 1e-8);
  const auto mm = run_cli("criterion --shape circle --which mm");
  CHECK(std::abs(field(last_line(mm.out), 1)) < 1e-8);
  CHECK(std::abs(field(last_line(mm.out), 2)) < 1e-8);

  const auto json = std::filesystem::temp_directory_path() / "curveflow_fig1.json";
  {
    std::ofstream f(json);
    io::write_curve_json(f, mollified_polygon(fig1_spec(0.08), 4096));
  }
  const auto tr = run_cli("criterion --input " + json.string() + " --which sv-translation --u 1,0");
  CHECK(tr.code == 0);
  CHECK(std::isfinite(field(last_line(tr.out), 3)));
  std::filesystem::remove(json);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("flow --shape circle --dt 1").code == 3);
  CHECK(run_cli("counterexample --figure 3").code == 2);
  CHECK(run_cli("counterexample --figure 1 --eps-list 0.02,0.04").code == 2);
  CHECK(run_cli("counterexample --figure 1 --eps-list abc").code == 2);
  CHECK(run_cli("loop --recipe square-dance").code == 2);
  CHECK(run_cli("criterion --input /nonexistent/curve.json").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);
}

TEST_CASE("cli: loop and sweep reports") {
  const auto loop = run_cli("loop --recipe circle-scale --m 200");
  REQUIRE(loop.code == 0);
  const auto line = last_line(loop.out);
  CHECK(std::abs(field(line, 2)) < field(line, 6));

  const auto sweep = run_cli("counterexample --figure 2 --eps-list 0.1,0.05");
  REQUIRE(sweep.code == 0);
  CHECK(sweep.out.rfind("eps,n,value_x,value_y,eps2_times_value_x,eps2_times_value_y,error_estimate\n", 0) == 0);
  CHECK(field(last_line(sweep.out), 0) == 0.0);
}
