#include "tspn/errors.hpp"
#include "tspn/instance.hpp"
#include "tspn/lp_model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tspn;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

// Elements in normalized order: {0,2}=(0,0), {0,3}=(0,1), {1,2}=(1,0),
// {1,3}=(1,1). The cyclic order 0 -> 2 -> 3 -> 1 walks the square.
Configuration square_config() {
  Configuration c{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  c.normalize();
  return c;
}

const std::vector<int> kSquareOrder{0, 2, 3, 1};

std::vector<Vec> square_points() { return {v2(0, 0), v2(0, 1), v2(1, 0), v2(1, 1)}; }

DirectionGuess covering(const std::vector<Vec>& pts, const std::vector<int>& order, bool path, double dl) {
  DirectionGuess g;
  for (const auto& e : tour_edges(pts, order, path)) g.push_back(covering_guess(e, dl));
  return g;
}

struct SquareModel {
  BaseSet base = build_base_set(BaseSetMode::Axis, 0.5, 2);
  Instance inst = parse_instance("2 4\n1 0 0\n1 0 1\n0 1 0\n0 1 1\n");
  double dl = delta(0.5, 2);
  Configuration c = square_config();
  DirectionGuess guess = covering(square_points(), kSquareOrder, false, dl);

  LpModel build(const std::vector<Hyperplane>& hs) const {
    auto g = build_arc_graph(base, c);
    return build_lp(c, compute_separated_pairs(g, hs), kSquareOrder, guess, dl, base, hs, false);
  }
};

}  // namespace

TEST_CASE("square model shape and optimum") {
  SquareModel s;
  auto m = s.build(s.inst.hyperplanes());
  CHECK(m.incidence_rows == 8);
  CHECK(m.separation_rows == 8);
  CHECK(m.num_rho == 8);
  CHECK(m.problem.num_vars == 8 + 8);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == lp::Status::Optimal);
  auto pts = element_points(m, sol);
  auto want = square_points();
  for (size_t i = 0; i < 4; ++i) CHECK((pts[i] - want[i]).norm() < 1e-7);

  // Objective equals the sum of per-edge proxies of the square.
  double proxy = 0;
  auto edges = tour_edges(want, kSquareOrder, false);
  for (size_t e = 0; e < edges.size(); ++e) proxy += approx_length(edges[e], s.guess[e], s.dl);
  CHECK(sol.objective == doctest::Approx(proxy).epsilon(1e-9));
  CHECK(proxy == doctest::Approx(4 * std::sqrt(1 + s.dl * s.dl / 4)).epsilon(1e-12));

  auto t = extract_tour(m, sol);
  CHECK(t.closed);
  CHECK(tour_length(t) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(tour_feasible(t, s.inst.hyperplanes()).feasible);
}

TEST_CASE("scaling the offsets scales the optimum") {
  SquareModel s;
  auto base_sol = solve_lp(s.build(s.inst.hyperplanes()));
  REQUIRE(base_sol.status == lp::Status::Optimal);
  for (double lambda : {0.5, 3.0}) {
    std::vector<Hyperplane> hs;
    for (auto h : s.inst.hyperplanes()) {
      h.offset *= lambda;
      hs.push_back(h);
    }
    auto sol = solve_lp(s.build(hs));
    REQUIRE(sol.status == lp::Status::Optimal);
    CHECK(sol.objective == doctest::Approx(lambda * base_sol.objective).epsilon(1e-9));
  }
}

TEST_CASE("point configuration on concurrent hyperplanes") {
  auto base = build_base_set(BaseSetMode::Axis, 0.5, 2);
  auto inst = parse_instance("2 3\n1 0 1\n0 1 1\n1 1 2\n").hyperplanes();
  Configuration c{{{0, 2}}};
  auto g = build_arc_graph(base, c);
  double dl = delta(0.5, 2);
  DirectionGuess guess{covering_guess(v2(1, 0), dl)};
  auto m = build_lp(c, compute_separated_pairs(g, inst), {0}, guess, dl, base, inst, false);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == lp::Status::Optimal);
  auto t = extract_tour(m, sol);
  CHECK(tour_length(t) == 0.0);
  CHECK((t.waypoints[0] - v2(1, 1)).norm() < 1e-9);
  CHECK(tour_feasible(t, inst).feasible);
}

TEST_CASE("infeasible by construction") {
  // A single point cannot lie on two parallel lines.
  auto base = build_base_set(BaseSetMode::Axis, 0.5, 2);
  auto inst = parse_instance("2 2\n1 0 0\n1 0 1\n").hyperplanes();
  Configuration c{{{0, 2}}};
  auto g = build_arc_graph(base, c);
  double dl = delta(0.5, 2);
  auto m = build_lp(c, compute_separated_pairs(g, inst), {0}, {covering_guess(v2(1, 0), dl)}, dl, base, inst, false);
  CHECK(solve_lp(m).status == lp::Status::Infeasible);

  // The square pinned by the instance cannot have a tour edge that runs
  // straight up when the guess says it runs right.
  SquareModel s;
  s.guess[0] = covering_guess(v2(0, 1), s.dl);
  CHECK(solve_lp(s.build(s.inst.hyperplanes())).status == lp::Status::Infeasible);
}

TEST_CASE("guess length must match the edge count") {
  SquareModel s;
  s.guess.pop_back();
  CHECK_THROWS_AS(s.build(s.inst.hyperplanes()), Error);
}

TEST_CASE("path mode drops the closing edge") {
  SquareModel s;
  auto base = s.base;
  auto hs = s.inst.hyperplanes();
  auto g = build_arc_graph(base, s.c);
  auto guess = covering(square_points(), kSquareOrder, true, s.dl);
  CHECK(guess.size() == 3);
  auto m = build_lp(s.c, compute_separated_pairs(g, hs), kSquareOrder, guess, s.dl, base, hs, true);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == lp::Status::Optimal);
  auto t = extract_tour(m, sol);
  CHECK_FALSE(t.closed);
  CHECK(tour_length(t) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("approximate edge length") {
  EdgeGuess g;
  g.lmax = 1;
  g.sgn_max = 1;
  g.ratio = {0.75, 1.0};
  g.sign = {1, 1};
  g.small = {false, false};
  CHECK(approx_length(v2(3, 4), g, 0.5) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(approx_length(v2(4, 3), g, 0.5), Error);

  for (double eps : {0.25, 0.5, 1.0}) {
    double dl = delta(eps, 2);
    auto cg = covering_guess(v2(1, 0), dl);
    CHECK(cg.small[1]);
    double len = approx_length(v2(1, 0), cg, dl);
    CHECK(len == doctest::Approx(std::sqrt(1 + dl * dl / 4)).epsilon(1e-15));
    CHECK(len >= 1.0);
    CHECK(len <= 1.0 + eps);
  }
}

TEST_CASE("objective sandwich on random vectors") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss(0, 1);
  for (int d : {2, 3}) {
    for (double eps : {0.25, 0.5, 1.0}) {
      double dl = delta(eps, d);
      for (int t = 0; t < 2000; ++t) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = gauss(rng);
        double q = approx_length(v, covering_guess(v, dl), dl) / v.norm();
        CHECK(q >= 1.0 / (1.0 + eps));
        CHECK(q <= 1.0 + eps);
      }
    }
  }
}
