// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Seeds are fixed so every run checks the same cases.

#include "tspn/baselines.hpp"
#include "tspn/ellipsoid.hpp"
#include "tspn/enumeration.hpp"
#include "tspn/errors.hpp"
#include "tspn/hull.hpp"
#include "tspn/lp_model.hpp"
#include "tspn/ptas.hpp"
#include "tspn/sparsify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace tspn;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool in_time = secs <= limit_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %2d %s: %s (%s; %.1f s of %.0f s)\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const double kEps[] = {0.25, 0.5, 1.0};

struct FuzzCase {
  Instance inst;
  double eps;
};

// Desk-scale fuzz instances: d in {2, 3}, 1 <= n <= 30, coefficients in
// [-5, 5], epsilon cycling through {0.25, 0.5, 1}.
FuzzCase fuzz_case(int i) {
  std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(i));
  int d = 2 + i % 2;
  int n = 1 + static_cast<int>(rng() % 30);
  return {random_instance(d, n, 5, rng()), kEps[(i / 2) % 3]};
}

RunConfig desk_config(double eps) {
  RunConfig cfg;
  cfg.epsilon = eps;
  cfg.jobs = 1;
  return cfg;
}

Vec random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Outcome c1_feasibility() {
  long long runs = 0, candidates = 0, bad = 0;
  for (int i = 0; i < 500; ++i) {
    auto fc = fuzz_case(i);
    auto hs = fc.inst.hyperplanes();
    auto rec = run_ptas(fc.inst, desk_config(fc.eps), [&](const Tour& t, const FeasibilityReport&) {
      ++candidates;
      if (!tour_feasible(t, hs, kTau).feasible) ++bad;
    });
    if (!tour_feasible(rec.tour, hs, kTau).feasible) ++bad;
    if (!tour_feasible(min_box_tour(fc.inst).tour, hs, kTau).feasible) ++bad;
    runs += 2;
  }
  return {bad == 0, std::to_string(runs) + " returned tours, " + std::to_string(candidates) + " LP candidates, " +
                        std::to_string(bad) + " infeasible"};
}

Outcome c2_sandwich() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  long long checks = 0, bad = 0;
  double worst = 1.0;
  for (int d : {2, 3}) {
    for (double eps : kEps) {
      const double dl = delta(eps, d);
      for (int t = 0; t < 10000; ++t) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = g(rng);
        double q = approx_length(v, covering_guess(v, dl), dl) / v.norm();
        ++checks;
        if (q < 1.0 / (1.0 + eps) || q > 1.0 + eps) ++bad;
        worst = std::max(worst, std::max(q, 1.0 / q) / (1.0 + eps));
      }
    }
  }
  return {bad == 0, std::to_string(checks) + " vectors, " + std::to_string(bad) + " violations, worst ratio/(1+eps) " +
                        fmt("%.4f", worst)};
}

Outcome c3_separated_pairs() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> centre(-1.0, 1.0), slack(0.2, 3.0);
  long long checks = 0, mismatches = 0;
  for (int p = 0; p < 200; ++p) {
    const int d = 2 + p % 2;
    auto base = build_base_set(BaseSetMode::Axis, 0.5, d);
    Vec z(d);
    for (int i = 0; i < d; ++i) z(i) = centre(rng);
    std::vector<double> rho(static_cast<size_t>(base.signed_count()));
    for (int k = 0; k < base.size(); ++k) {
      double c = base.hyperplanes[static_cast<size_t>(k)].normal.dot(z);
      rho[static_cast<size_t>(2 * k)] = c - slack(rng);
      rho[static_cast<size_t>(2 * k + 1)] = -(c + slack(rng));
    }
    auto r = configuration_of(base, rho);
    auto graph = build_arc_graph(base, r.config);
    for (int t = 0; t < 50; ++t) {
      Vec n = random_unit(rng, d);
      auto [plus, minus] = separated_pair(graph, n);
      double hi = -INFINITY, lo = INFINITY;
      for (const auto& x : r.points) {
        hi = std::max(hi, x.dot(n));
        lo = std::min(lo, x.dot(n));
      }
      const double tol = 1e-9 * (1.0 + std::abs(hi) + std::abs(lo));
      ++checks;
      if (std::abs(r.points[static_cast<size_t>(plus)].dot(n) - hi) > tol ||
          std::abs(r.points[static_cast<size_t>(minus)].dot(n) - lo) > tol)
        ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(checks) + " walks, " + std::to_string(mismatches) + " mismatches"};
}

Outcome c4_relative_optimality() {
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto fc = fuzz_case(i);
    double ptas = run_ptas(fc.inst, desk_config(fc.eps)).length;
    double box = min_box_tour(fc.inst).length;
    double bound = (1.0 + fc.eps) * box;
    if (ptas > bound * (1.0 + 1e-6) + 1e-12) ++bad;
    if (box > 1e-12) worst = std::max(worst, ptas / box);
  }
  return {bad == 0, "200 instances, " + std::to_string(bad) + " above (1+eps) box, worst ptas/box " + fmt("%.4f", worst)};
}

Outcome c5_square() {
  auto inst = parse_instance("2 4\n1 0 0\n1 0 1\n0 1 0\n0 1 1\n");
  auto rec = run_ptas(inst, desk_config(0.25));
  double bound = 1.25 * 2.0 * std::sqrt(2.0);
  bool ok = rec.feasibility.feasible && rec.length <= bound;
  return {ok, "length " + fmt("%.6f", rec.length) + " vs bound " + fmt("%.6f", bound)};
}

Outcome c6_sparsification() {
  int bad_margin = 0, bad_count = 0;
  double worst_margin = INFINITY;
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng(6000 + static_cast<std::uint64_t>(i));
    const int d = 2 + i % 2;
    const int cap = d == 2 ? 100 : 40;
    const int count = d + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cap - d));
    const double eps = (i / 2) % 2 == 0 ? 0.5 : 1.0;
    auto p = random_polytope(d, count, rng());
    auto rep = sparsify_polytope(p, eps);
    // independent containment check: every vertex in the expanded hull
    auto grown = scale_points(rep.selected_points, rep.center, 1.0 + eps);
    for (const auto& v : p.vertices) {
      if (!in_hull(grown, v, 1e-7)) ++bad_margin;
    }
    if (rep.containment_margin < -kTau) ++bad_margin;
    worst_margin = std::min(worst_margin, rep.containment_margin);
    if (static_cast<long long>(rep.selected.size()) > d * ray_set(eps, d).ray_count) ++bad_count;
  }
  return {bad_margin == 0 && bad_count == 0, "200 polytopes, containment failures " + std::to_string(bad_margin) +
                                                 ", size bound failures " + std::to_string(bad_count) +
                                                 ", least margin " + fmt("%.3g", worst_margin)};
}

// Tour through the vertices of the snapped polytope: the looped tour of the
// expanded vertices, shortcut to the first visit of each snapped vertex.
double snapped_tour_upper_bound(const PolytopeV& snapped, const Tour& loop) {
  std::vector<int> keep;
  std::vector<bool> seen(snapped.vertices.size(), false);
  for (size_t w = 0; w < loop.waypoints.size(); ++w) {
    for (size_t k = 0; k < snapped.vertices.size(); ++k) {
      if (!seen[k] && (loop.waypoints[w] - snapped.vertices[k]).norm() <= 1e-9) {
        seen[k] = true;
        keep.push_back(static_cast<int>(w));
        break;
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) return INFINITY;
  return tour_length(shortcut_tour(loop, keep));
}

Outcome c7_scaled_tour() {
  int bad = 0, exact = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(7000 + static_cast<std::uint64_t>(i));
    const int d = 2 + i % 2;
    const double eps = (i / 2) % 2 == 0 ? 0.5 : 1.0;
    const double eps_p = std::sqrt(1.0 + eps) - 1.0;  // (1 + eps')^2 = 1 + eps
    auto p = random_polytope(d, d + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(12 - d)), rng());
    const double opt = tour_length(held_karp(p.vertices));
    auto rep = sparsify_polytope(p, eps_p);
    auto spec = snap_grid(rep.expanded, eps_p);
    auto snapped = snap_to_grid(rep.expanded, spec.anchor, spec.g);
    double snapped_len;
    if (static_cast<int>(snapped.vertices.size()) <= kHeldKarpMax) {
      snapped_len = tour_length(held_karp(snapped.vertices));
      ++exact;
    } else {
      auto loop = looped_tour(held_karp(rep.expanded.vertices), spec.anchor, spec.g);
      snapped_len = snapped_tour_upper_bound(snapped, loop);
    }
    const double bound = (1.0 + eps_p) * (1.0 + eps_p) * opt;
    if (snapped_len > bound * (1.0 + 1e-9)) ++bad;
    worst = std::max(worst, snapped_len / opt);
  }
  return {bad == 0, "100 polytopes (" + std::to_string(exact) + " exact, others by looped-tour upper bound), " +
                        std::to_string(bad) + " violations, worst ratio " + fmt("%.4f", worst)};
}

Outcome c8_normalization() {
  int bad = 0;
  double worst_in = 0.0, worst_out = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(8000 + static_cast<std::uint64_t>(i));
    const int d = 2 + i % 2;
    auto p = random_polytope(d, d + 1 + static_cast<int>(rng() % 30), rng());
    auto h = hrep_of(p);
    auto n = normalize_polytope(h);
    // recompute both radii from the map instead of trusting the report
    double inner = INFINITY, outer = 0.0;
    for (const auto& v : p.vertices) outer = std::max(outer, n.map.apply(v).norm());
    std::vector<Vec> img;
    for (const auto& v : p.vertices) img.push_back(n.map.apply(v));
    for (const auto& f : hull_facets(img)) inner = std::min(inner, f.offset);
    worst_in = std::max(worst_in, std::abs(inner - 1.0));
    worst_out = std::max(worst_out, outer / d);
    if (std::abs(inner - 1.0) > 1e-3 || outer > d * (1.0 + 1e-3)) ++bad;
  }
  return {bad == 0, "100 polytopes, " + std::to_string(bad) + " failures, max |r_in - 1| " + fmt("%.2e", worst_in) +
                        ", max r_out/d " + fmt("%.4f", worst_out)};
}

Outcome c9_baselines() {
  auto inst = parse_instance("2 4\n1 0 0\n1 0 2\n0 1 0\n0 1 1\n");
  double box = min_box_tour(inst).length;
  Vec a(2), b(2), c(2), e(2);
  a << 0, 0;
  b << 1, 0;
  c << 1, 1;
  e << 0, 1;
  double hk = tour_length(held_karp({a, b, c, e}));
  bool ok = std::abs(box - 6.0) <= kTau && std::abs(hk - 4.0) <= kTau;
  return {ok, "box tour " + fmt("%.12f", box) + ", Held-Karp square " + fmt("%.12f", hk)};
}

Outcome c10_path() {
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    auto fc = fuzz_case(i);
    auto closed_cfg = desk_config(fc.eps);
    auto path_cfg = closed_cfg;
    path_cfg.path_mode = true;
    double pc = run_ptas(fc.inst, closed_cfg).length, pp = run_ptas(fc.inst, path_cfg).length;
    double bc = min_box_tour(fc.inst).length, bp = min_box_tour(fc.inst, true).length;
    if (pp > pc + 1e-9 * (1 + pc)) ++bad;
    if (bp > bc + 1e-9 * (1 + bc)) ++bad;
  }
  Vec a(2), b(2), c(2), e(2);
  a << 0, 0;
  b << 1, 0;
  c << 1, 1;
  e << 0, 1;
  double open = tour_length(held_karp({a, b, c, e}, false));
  bool ok = bad == 0 && std::abs(open - 3.0) <= kTau;
  return {ok, "200 instances x (ptas, box), " + std::to_string(bad) + " paths longer than tours; square open path " +
                  fmt("%.12f", open)};
}

}  // namespace

int main() {
  report(1, "feasibility soundness", 600, c1_feasibility);
  report(2, "edge-length sandwich", 60, c2_sandwich);
  report(3, "separated pairs", 120, c3_separated_pairs);
  report(4, "relative optimality vs box", 1800, c4_relative_optimality);
  report(5, "square lines", 60, c5_square);
  report(6, "sparsification", 600, c6_sparsification);
  report(7, "scaled tour bound", 300, c7_scaled_tour);
  report(8, "ellipsoid normalization", 300, c8_normalization);
  report(9, "baseline sanity", 60, c9_baselines);
  report(10, "path variant", 600, c10_path);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
