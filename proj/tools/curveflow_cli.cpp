// Batch harness: curve flows, pointwise criteria, counterexample sweeps and
// loop integrals, all with CSV output on stdout or --out.
//
// Exit codes: 0 success, 2 usage or malformed input, 3 numerical abort.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "curveflow/counterexamples.hpp"
#include "curveflow/criteria.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/experiments.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/io.hpp"

namespace {

using namespace curveflow;

constexpr int kExitUsage   = 2;
constexpr int kExitAbort   = 3;

struct ShapeArgs {
  std::string shape = "circle";
  std::string input;
  double r   = 1.0;
  double a   = 2.0;
  double b   = 1.0;
  double eps = 0.05;
  std::size_t n = 0;  // 0: 128 for smooth shapes, default_resolution for polygons
};

void add_shape_options(CLI::App* cmd, ShapeArgs& s) {
  cmd->add_option("--shape", s.shape, "Built-in curve")
      ->check(CLI::IsMember({"circle", "ellipse", "fig1", "fig2"}));
  cmd->add_option("--input", s.input, "Curve JSON file (overrides --shape)");
  cmd->add_option("--r", s.r, "Circle radius")->check(CLI::PositiveNumber);
  cmd->add_option("--a", s.a, "Ellipse semi-axis along x")->check(CLI::PositiveNumber);
  cmd->add_option("--b", s.b, "Ellipse semi-axis along y")->check(CLI::PositiveNumber);
  cmd->add_option("--eps", s.eps, "Corner scale of fig1/fig2")->check(CLI::PositiveNumber);
  cmd->add_option("--n", s.n, "Number of nodes (0 = automatic)")->check(CLI::Range(0, 1 << 24));
}

ClosedCurve make_shape(const ShapeArgs& s) {
  if (!s.input.empty()) { return io::read_curve_json_file(s.input); }
  const std::size_t smooth_n = s.n == 0 ? 128 : s.n;
  if (s.shape == "circle") { return make_circle(s.r, {0.0, 0.0}, smooth_n); }
  if (s.shape == "ellipse") { return make_ellipse(s.a, s.b, smooth_n); }
  const auto spec = s.shape == "fig1" ? fig1_spec(s.eps) : fig2_spec(s.eps);
  return mollified_polygon(spec, s.n == 0 ? default_resolution(spec) : s.n);
}

// Writes to the named file, or stdout when the name is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) { throw InvalidInput("cannot open output file '" + path + "'"); }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) { throw std::invalid_argument(item); }
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) { throw InvalidInput(std::string(what) + ": empty list"); }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curve-space flows, conservativity criteria and counterexamples"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned long seed = 20240501;
  unsigned jobs      = 1;
  app.add_option("--seed", seed, "Seed for randomized utilities");
  app.add_option("--jobs", jobs, "Worker threads for independent eps values or frames")->check(CLI::Range(1, 256));

  // flow ------------------------------------------------------------------------
  auto* flow = app.add_subcommand("flow", "Evolve a curve by MCF, modified MCF or UCMCF");
  ShapeArgs flow_shape;
  add_shape_options(flow, flow_shape);
  std::string kind_name = "mcf";
  double dt = 1e-4, t_end = 0.1, cfl = EvolveOptions{}.cfl;
  std::size_t reparam_every = 10, snapshot_every = 0;
  std::string flow_out, save_curve, snapshot_prefix;
  flow->add_option("--kind", kind_name, "Flow kind")->check(CLI::IsMember({"mcf", "modified", "modified-mcf", "ucmcf"}));
  flow->add_option("--dt", dt, "Time step")->check(CLI::PositiveNumber);
  flow->add_option("--t-end", t_end, "Final time")->check(CLI::NonNegativeNumber);
  flow->add_option("--cfl", cfl, "CFL constant")->check(CLI::PositiveNumber);
  flow->add_option("--reparam-every", reparam_every, "Resample every k steps (0 = never)");
  flow->add_option("--out", flow_out, "Trajectory CSV (default stdout)");
  flow->add_option("--save-curve", save_curve, "Write the final curve as JSON");
  flow->add_option("--snapshot-prefix", snapshot_prefix, "Write <prefix>_<step>.json snapshots");
  flow->add_option("--snapshot-every", snapshot_every, "Snapshot cadence in steps");

  // criterion -------------------------------------------------------------------
  auto* crit = app.add_subcommand("criterion", "Evaluate a pointwise criterion on one curve");
  ShapeArgs crit_shape;
  add_shape_options(crit, crit_shape);
  std::string which = "sv", u_text = "1,0", crit_out;
  crit->add_option("--which", which, "Criterion")->check(CLI::IsMember({"sv", "sv-translation", "mm", "q"}));
  crit->add_option("--u", u_text, "Direction for sv-translation, as x,y");
  crit->add_option("--out", crit_out, "CSV output (default stdout)");

  // counterexample --------------------------------------------------------------
  auto* cex = app.add_subcommand("counterexample", "Sweep eps for the Fig. 1 or Fig. 2 construction");
  int figure = 1;
  std::string eps_text = "0.04,0.02,0.01", cex_out;
  std::size_t cex_n = 0;
  cex->add_option("--figure", figure, "1 (translation criterion) or 2 (cubic criterion)")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  cex->add_option("--eps-list", eps_text, "Strictly decreasing eps values");
  cex->add_option("--n", cex_n, "Nodes per curve (0 = automatic)");
  cex->add_option("--out", cex_out, "CSV output (default stdout)");

  // loop ------------------------------------------------------------------------
  auto* loop = app.add_subcommand("loop", "Integrate a pairing one-form around a closed loop");
  std::string recipe_name;
  LoopOptions loop_opts;
  std::string loop_out;
  loop->add_option("--recipe", recipe_name, "circle-scale | shape-scale | mixed-sv | mixed-mm")->required();
  loop->add_option("--m", loop_opts.m, "Time samples (even)")->check(CLI::Range(8, 1 << 20));
  loop->add_option("--n", loop_opts.n, "Nodes per curve (0 = automatic)");
  loop->add_option("--eps", loop_opts.eps, "Corner scale of the triangle shapes")->check(CLI::PositiveNumber);
  loop->add_option("--out", loop_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (flow->parsed()) {
      const auto c0        = make_shape(flow_shape);
      const auto traj      = evolve(c0, parse_flow_kind(kind_name), t_end, dt, reparam_every, EvolveOptions{cfl});
      Output out(flow_out);
      io::write_trajectory_csv(out.stream(), traj);
      if (!save_curve.empty()) {
        Output curve_out(save_curve);
        io::write_curve_json(curve_out.stream(), traj.curves.back());
      }
      if (!snapshot_prefix.empty() && snapshot_every > 0) {
        for (std::size_t k = 0; k < traj.curves.size(); k += snapshot_every) {
          char name[32];
          std::snprintf(name, sizeof name, "_%06zu.json", k);
          Output snap(snapshot_prefix + name);
          io::write_curve_json(snap.stream(), traj.curves[k]);
        }
      }
    } else if (crit->parsed()) {
      const auto c = make_shape(crit_shape);
      Output out(crit_out);
      auto& os = out.stream();
      if (which == "sv") {
        os << "criterion,value\nsv," << io::format_real(criterion_sv(c)) << '\n';
      } else if (which == "sv-translation") {
        const auto u = parse_list(u_text, "--u");
        if (u.size() != 2) { throw InvalidInput("--u needs two components"); }
        os << "criterion,u_x,u_y,value\nsv-translation," << io::format_real(u[0]) << ',' << io::format_real(u[1])
           << ',' << io::format_real(criterion_sv_translation(c, {u[0], u[1]})) << '\n';
      } else if (which == "mm") {
        const Vec2 v = criterion_mm(c);
        os << "criterion,value_x,value_y\nmm," << io::format_real(v.x) << ',' << io::format_real(v.y) << '\n';
      } else {
        const auto q = quantity_q(scaled(c, 1.0 / perimeter(c)));
        os << "criterion,kernel,reduced\nq," << io::format_real(q.kernel) << ',' << io::format_real(q.reduced) << '\n';
      }
    } else if (cex->parsed()) {
      const auto eps_list = parse_list(eps_text, "--eps-list");
      const auto rec      = figure == 1 ? sv_contradiction_sweep(eps_list, jobs, cex_n)
                                        : mm_divergence_sweep(eps_list, jobs, cex_n);
      Output out(cex_out);
      io::write_sweep_csv(out.stream(), rec);
    } else if (loop->parsed()) {
      loop_opts.jobs    = jobs;
      const auto recipe = parse_loop_recipe(recipe_name);
      const auto report = run_loop(recipe, loop_opts);
      const auto& r     = report.integral;
      Output out(loop_out);
      out.stream() << "recipe,m,value,hv_term,other_term,reduced_term,error_estimate\n"
                   << to_string(recipe) << ',' << r.m << ',' << io::format_real(r.value) << ','
                   << io::format_real(r.hv_term) << ',' << io::format_real(r.other_term) << ','
                   << io::format_real(r.reduced_term) << ',' << io::format_real(r.error_estimate) << '\n';
      std::cerr << to_string(recipe) << ": " << io::format_real(r.value) << " +- " << io::format_real(r.error_estimate)
                << '\n';
    }
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kExitAbort;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  (void)seed;
  return 0;
}
