#include "tspn/baselines.hpp"
#include "tspn/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace tspn;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

std::vector<Vec> square() { return {v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)}; }

double brute_force_tour(const std::vector<Vec>& pts, bool closed) {
  std::vector<int> perm(pts.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    if (closed && perm[0] != 0) break;
    double len = 0;
    for (size_t i = 0; i + 1 < perm.size(); ++i) len += (pts[static_cast<size_t>(perm[i + 1])] - pts[static_cast<size_t>(perm[i])]).norm();
    if (closed) len += (pts[static_cast<size_t>(perm.front())] - pts[static_cast<size_t>(perm.back())]).norm();
    best = std::min(best, len);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("Held-Karp on small sets") {
  CHECK(tour_length(held_karp(square())) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(tour_length(held_karp(square(), false)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(tour_length(held_karp({v2(0, 0), v2(1.5, 0), v2(4, 0)})) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(tour_length(held_karp({v2(2, 3)})) == 0.0);
  CHECK(held_karp({}).waypoints.empty());
  std::vector<Vec> many(16, v2(0, 0));
  CHECK_THROWS_AS(held_karp(many), Error);
}

TEST_CASE("Held-Karp matches brute force on 8 random points") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(v2(u(rng), u(rng)));
    for (bool closed : {true, false}) {
      CHECK(tour_length(held_karp(pts, closed)) == doctest::Approx(brute_force_tour(pts, closed)).epsilon(1e-12));
    }
  }
}

TEST_CASE("heuristic tour orders are permutations no shorter than the optimum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(v2(u(rng), u(rng)));
    auto order = greedy_two_opt_order(pts);
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ident(9);
    std::iota(ident.begin(), ident.end(), 0);
    CHECK(sorted == ident);
    Tour t;
    for (int i : order) t.waypoints.push_back(pts[static_cast<size_t>(i)]);
    CHECK(tour_length(t) >= tour_length(held_karp(pts)) - 1e-12);
  }
}

TEST_CASE("minimum box of the 2x1 rectangle lines") {
  auto inst = parse_instance("2 4\n1 0 0\n1 0 2\n0 1 0\n0 1 1\n");
  auto box = min_box(inst.hyperplanes(), 2);
  CHECK((box.lower - v2(0, 0)).norm() < 1e-9);
  CHECK((box.upper - v2(2, 1)).norm() < 1e-9);
  auto rec = min_box_tour(inst);
  CHECK(rec.algorithm == "min_box");
  CHECK(std::abs(rec.length - 6.0) <= kTau);
  CHECK(rec.feasibility.feasible);
  auto path = min_box_tour(inst, true);
  CHECK(std::abs(path.length - 4.0) <= kTau);  // open path 1 + 2 + 1
}

TEST_CASE("minimum box degenerates to a point for concurrent hyperplanes") {
  auto inst = parse_instance("2 3\n1 0 1\n0 1 2\n1 -1 -1\n");
  auto rec = min_box_tour(inst);
  CHECK(rec.length <= 1e-9);
  CHECK(rec.feasibility.feasible);
}

TEST_CASE("box tours of random 3D instances are feasible") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto inst = random_instance(3, 8, 5, seed);
    auto rec = min_box_tour(inst);
    CHECK(rec.feasibility.feasible);
    CHECK(tour_feasible(rec.tour, inst.hyperplanes()).feasible);
  }
}

TEST_CASE("local search on the square lines finds the diagonal") {
  auto inst = parse_instance("2 4\n1 0 0\n1 0 1\n0 1 0\n0 1 1\n");
  auto rec = local_search_oracle(inst);
  CHECK(rec.algorithm == "local_search_heuristic");
  CHECK(rec.feasibility.feasible);
  CHECK(rec.length == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("local search trivial cases") {
  auto one = parse_instance("2 1\n3 4 7\n");
  auto r1 = local_search_oracle(one);
  CHECK(r1.length <= 1e-9);
  CHECK(r1.feasibility.feasible);

  auto two = parse_instance("3 2\n0 0 1 0\n0 0 1 3\n");
  auto r2 = local_search_oracle(two);
  CHECK(r2.length == doctest::Approx(6.0).epsilon(1e-9));
  LocalSearchOptions opt;
  opt.path_mode = true;
  CHECK(local_search_oracle(two, opt).length == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("path is never longer than the closed tour") {
  auto lines = parse_instance("2 2\n1 0 0\n1 0 1\n");
  LocalSearchOptions opt;
  opt.path_mode = true;
  CHECK(local_search_oracle(lines, opt).length == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(local_search_oracle(lines).length == doctest::Approx(2.0).epsilon(1e-9));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = random_instance(2 + static_cast<int>(seed % 2), 6, 4, seed);
    CHECK(min_box_tour(inst, true).length <= min_box_tour(inst).length + 1e-9);
  }
}
