// tspn: solve / compare / sparsify-demo / gen.

#include "tspn/baselines.hpp"
#include "tspn/errors.hpp"
#include "tspn/hull.hpp"
#include "tspn/instance.hpp"
#include "tspn/ptas.hpp"
#include "tspn/sparsify.hpp"
#include "tspn/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kOther = 1, kParse = 2, kNoCandidate = 3, kAssertion = 4 };

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw tspn::ParseError(0, "cannot write " + path);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

struct Common {
  std::string instance;
  std::string base = "axis";
  std::string out;
  std::string svg;
  tspn::RunConfig cfg;
  double granularity = 0.0;
};

void add_run_flags(CLI::App* app, Common& c) {
  app->add_option("instance", c.instance, "instance file")->required();
  app->add_option("--epsilon", c.cfg.epsilon, "approximation parameter in (0, 2]");
  app->add_option("--base-set", c.base, "axis | full | path to a normals file");
  app->add_option("--grid-granularity", c.granularity, "grid side for --base-set full");
  app->add_option("--tuple-cap", c.cfg.tuple_cap, "largest grid tuple count for --base-set full");
  app->add_option("--order-cap", c.cfg.order_cap, "visit orders per configuration");
  app->add_option("--config-cap", c.cfg.config_cap, "configurations searched");
  app->add_option("--guess-cap", c.cfg.guess_cap, "full guess enumeration limit per (C, sigma)");
  app->add_option("--refine", c.cfg.refine_rounds, "covering-guess refinement rounds");
  app->add_option("--samples", c.cfg.samples, "random shift vectors for configuration sampling");
  app->add_flag("--path", c.cfg.path_mode, "open path instead of closed tour");
  app->add_option("--seed", c.cfg.seed, "random seed");
  app->add_option("--jobs", c.cfg.jobs, "worker threads (0 = all cores)");
  app->add_option("--svg", c.svg, "write a figure (d = 2 only)");
  app->add_option("--out", c.out, "write JSON here instead of stdout");
}

void finish_config(Common& c) {
  if (c.base == "axis") {
    c.cfg.base_mode = tspn::BaseSetMode::Axis;
  } else if (c.base == "full") {
    c.cfg.base_mode = tspn::BaseSetMode::Full;
  } else {
    c.cfg.base_mode = tspn::BaseSetMode::File;
    c.cfg.base_file = c.base;
  }
  if (c.granularity > 0) c.cfg.grid_granularity = c.granularity;
  c.cfg.validate();
}

int cmd_solve(Common& c) {
  finish_config(c);
  auto inst = tspn::load_instance(c.instance);
  for (const auto& w : tspn::validate_instance(inst)) std::cerr << "warning: " << w << '\n';
  auto rec = tspn::run_ptas(inst, c.cfg);
  write_out(tspn::write_result(rec), c.out);
  if (!c.svg.empty()) tspn::emit_svg(inst.hyperplanes(), {rec.tour}, c.svg);
  return kOk;
}

int cmd_compare(Common& c) {
  finish_config(c);
  auto inst = tspn::load_instance(c.instance);
  for (const auto& w : tspn::validate_instance(inst)) std::cerr << "warning: " << w << '\n';
  auto ptas = tspn::run_ptas(inst, c.cfg);
  auto box = tspn::min_box_tour(inst, c.cfg.path_mode);
  tspn::LocalSearchOptions lso;
  lso.seed = c.cfg.seed;
  lso.path_mode = c.cfg.path_mode;
  auto ls = tspn::local_search_oracle(inst, lso);
  const std::vector<const tspn::ResultRecord*> recs{&ptas, &box, &ls};

  auto ratio = [](double a, double b) {
    if (b > 1e-12) return a / b;
    return a <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
  };
  std::printf("%-24s %14s %9s %12s %12s\n", "algorithm", "length", "feasible", "ptas/this", "wall_ms");
  json table = json::array();
  for (const auto* r : recs) {
    double q = ratio(ptas.length, r->length);
    std::printf("%-24s %14.6f %9s %12.6f %12.1f\n", r->algorithm.c_str(), r->length, r->feasibility.feasible ? "yes" : "no", q,
                r->wall_ms);
    json row;
    row["algorithm"] = r->algorithm;
    row["length"] = r->length;
    row["feasible"] = r->feasibility.feasible;
    row["ptas_ratio"] = std::isfinite(q) ? json(q) : json(nullptr);
    row["wall_ms"] = r->wall_ms;
    table.push_back(row);
  }
  if (!c.out.empty()) write_out(table.dump(2), c.out);
  if (!c.svg.empty()) tspn::emit_svg(inst.hyperplanes(), {ptas.tour, box.tour, ls.tour}, c.svg);
  return kOk;
}

struct DemoArgs {
  int dim = 2;
  int vertices = 30;
  double epsilon = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_sparsify(const DemoArgs& a) {
  if (a.dim < tspn::kMinDim || a.dim > tspn::kMaxDim) throw tspn::Error(tspn::ErrorKind::DimensionOutOfRange, "dim must lie in [2, 4]");
  auto poly = tspn::random_polytope(a.dim, a.vertices, a.seed);
  auto rep = tspn::sparsify_polytope(poly, a.epsilon);
  auto snapped = tspn::snap_to_grid(rep.expanded, a.epsilon);
  json j;
  j["dim"] = a.dim;
  j["epsilon"] = a.epsilon;
  j["vertices"] = poly.vertices.size();
  j["rays"] = rep.rays;
  j["selected"] = rep.selected.size();
  j["selected_bound"] = rep.bound;
  j["containment_margin"] = rep.containment_margin;
  j["expanded_vertices"] = rep.expanded.vertices.size();
  j["snapped_vertices"] = snapped.vertices.size();
  json center = json::array();
  for (Eigen::Index i = 0; i < rep.center.size(); ++i) center.push_back(rep.center(i));
  j["center"] = center;
  write_out(j.dump(2), a.out);
  return kOk;
}

struct GenArgs {
  int dim = 2;
  int n = 8;
  int range = 5;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& g) {
  if (g.dim < tspn::kMinDim || g.dim > tspn::kMaxDim) throw tspn::Error(tspn::ErrorKind::DimensionOutOfRange, "dim must lie in [2, 4]");
  if (g.n < 1 || g.range < 1) throw tspn::ParseError(0, "n and range must be >= 1");
  write_out(tspn::write_instance(tspn::random_instance(g.dim, g.n, g.range, g.seed)), g.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TSP with hyperplane neighborhoods: approximation scheme and baselines"};
  app.require_subcommand(1);
  Common solve, compare;
  auto* s = app.add_subcommand("solve", "run the approximation scheme");
  add_run_flags(s, solve);
  auto* c = app.add_subcommand("compare", "run the scheme and the baselines side by side");
  add_run_flags(c, compare);
  DemoArgs demo;
  auto* sp = app.add_subcommand("sparsify-demo", "sparsify and snap a random polytope");
  sp->add_option("--dim", demo.dim, "dimension");
  sp->add_option("--vertices", demo.vertices, "random points before taking the hull");
  sp->add_option("--epsilon", demo.epsilon, "expansion parameter");
  sp->add_option("--seed", demo.seed, "random seed");
  sp->add_option("--out", demo.out, "write JSON here instead of stdout");
  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a random instance");
  g->add_option("--dim", gen.dim, "dimension");
  g->add_option("--n", gen.n, "number of hyperplanes");
  g->add_option("--range", gen.range, "coefficient magnitude bound");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--out", gen.out, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  try {
    if (s->parsed()) return cmd_solve(solve);
    if (c->parsed()) return cmd_compare(compare);
    if (sp->parsed()) return cmd_sparsify(demo);
    if (g->parsed()) return cmd_gen(gen);
  } catch (const tspn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case tspn::ErrorKind::ParseError:
      case tspn::ErrorKind::DimensionOutOfRange:
      case tspn::ErrorKind::ZeroNormal: return kParse;
      case tspn::ErrorKind::NoCandidateFound: return kNoCandidate;
      case tspn::ErrorKind::InternalAssertion: return kAssertion;
      default: return kOther;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
