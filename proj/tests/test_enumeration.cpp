#include "tspn/enumeration.hpp"
#include "tspn/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace tspn;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

// Axis base in 2D: hyperplanes x, y, x+y, x-y; signed index 2k is +n_k.
// The unit square [0,1]^2 has vertex (0,0) on {+x, +y} = {0, 2},
// (1,0) on {-x, +y} = {1, 2}, (1,1) on {-x, -y} = {1, 3}, (0,1) on {0, 3}.
Configuration square_config() {
  Configuration c{{{0, 2}, {1, 2}, {1, 3}, {0, 3}}};
  c.normalize();
  return c;
}

int index_of(const Configuration& c, const Element& e) {
  auto it = std::find(c.elements.begin(), c.elements.end(), e);
  return it == c.elements.end() ? -1 : static_cast<int>(it - c.elements.begin());
}

std::vector<double> box_rho(const BaseSet& b, const Vec& lo, const Vec& hi) {
  // rho_s = min over box corners of <n_s, x>
  std::vector<double> rho(static_cast<size_t>(b.signed_count()));
  const int d = b.dim;
  for (int s = 0; s < b.signed_count(); ++s) {
    Vec n = b.signed_normal(s);
    double v = 0;
    for (int i = 0; i < d; ++i) v += std::min(n(i) * lo(i), n(i) * hi(i));
    rho[static_cast<size_t>(s)] = v;
  }
  return rho;
}

}  // namespace

TEST_CASE("delta and ratio grid") {
  CHECK(delta(1.0, 2) == doctest::Approx(std::sqrt(0.375)).epsilon(1e-12));
  auto g = ratio_grid(0.5);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(0.25));
  CHECK(g[1] == doctest::Approx(0.75));
  CHECK(g[2] == doctest::Approx(1.6875));
}

TEST_CASE("element validity and antichains") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  CHECK(is_valid_element(b, {0, 2}));
  CHECK_FALSE(is_valid_element(b, {0, 1}));  // x >= a and -x >= b share a normal
  CHECK_FALSE(is_valid_element(b, {0}));
  CHECK(is_antichain({{0, 2}, {1, 3}}));
  CHECK_FALSE(is_antichain({{0, 2}, {0, 2, 4}}));
}

TEST_CASE("brute force contains the square configuration") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  ConfigOptions opt;
  opt.mode = ConfigMode::BruteForce;
  opt.max_element_size = 2;
  opt.max_config_size = 4;
  opt.cap = 100000;
  auto all = enumerate_configurations(b, opt);
  CHECK_FALSE(all.truncated);
  // 24 valid pairs (28 minus the 4 opposite pairs); any family of distinct
  // pairs is an antichain: C(24,1)+C(24,2)+C(24,3)+C(24,4).
  CHECK(all.items.size() == 24 + 276 + 2024 + 10626);
  auto sq = square_config();
  CHECK(std::any_of(all.items.begin(), all.items.end(), [&](const Realization& r) { return r.config == sq; }));

  opt.cap = 10;
  auto cut = enumerate_configurations(b, opt);
  CHECK(cut.truncated);
  CHECK(cut.items.size() == 10);
}

TEST_CASE("configuration of the unit square is the square configuration") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  auto r = configuration_of(b, box_rho(b, v2(0, 0), v2(1, 1)));
  CHECK(r.config == square_config());
  int k = index_of(r.config, {1, 3});
  REQUIRE(k >= 0);
  CHECK((r.points[static_cast<size_t>(k)] - v2(1, 1)).norm() < 1e-9);
}

TEST_CASE("configuration of a flat box keeps all tight half-spaces") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  auto r = configuration_of(b, box_rho(b, v2(0, 0), v2(1, 0)));
  REQUIRE(r.config.size() == 2);
  for (const auto& e : r.config.elements) CHECK(is_valid_element(b, e));
}

TEST_CASE("arc graph of the square") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  auto c = square_config();
  auto g = build_arc_graph(b, c);
  CHECK(g.nodes == 4);
  CHECK(g.arcs.size() == 8);
  auto pt = [&](const Element& e) {
    int i = index_of(c, e);
    static const std::vector<std::pair<Element, Vec>> where{
        {{0, 2}, v2(0, 0)}, {{1, 2}, v2(1, 0)}, {{1, 3}, v2(1, 1)}, {{0, 3}, v2(0, 1)}};
    for (const auto& [el, p] : where)
      if (index_of(c, el) == i) return p;
    return Vec(v2(0, 0));
  };
  for (const auto& a : g.arcs) {
    Vec edge = pt(c.elements[static_cast<size_t>(a.to)]) - pt(c.elements[static_cast<size_t>(a.from)]);
    CHECK(edge.norm() == doctest::Approx(1.0));  // only square sides, no diagonals
    CHECK((a.dir.normalized() - edge.normalized()).norm() < 1e-9);
  }
}

TEST_CASE("elements sharing too few half-spaces get no arc") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  Configuration c{{{0, 2}, {1, 3}}};
  auto g = build_arc_graph(b, c);
  CHECK(g.arcs.empty());
  Configuration bad{{{0, 1}}};
  CHECK_THROWS_AS(build_arc_graph(b, bad), Error);
}

TEST_CASE("separated pair on the square") {
  auto b = build_base_set(BaseSetMode::Axis, 0.5, 2);
  auto c = square_config();
  auto g = build_arc_graph(b, c);
  auto [plus, minus] = separated_pair(g, v2(1, 1) / std::sqrt(2.0));
  CHECK(c.elements[static_cast<size_t>(plus)] == Element{1, 3});   // vertex (1,1)
  CHECK(c.elements[static_cast<size_t>(minus)] == Element{0, 2});  // vertex (0,0)
}

TEST_CASE("token walk agrees with a vertex scan on sampled polytopes") {
  for (int d : {2, 3}) {
    auto b = build_base_set(BaseSetMode::Axis, 0.5, d);
    ConfigOptions opt;
    opt.samples = 30;
    opt.seed = 4;
    auto en = enumerate_configurations(b, opt);
    REQUIRE(!en.items.empty());
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss(0, 1);
    for (const auto& r : en.items) {
      auto g = build_arc_graph(b, r.config);
      for (int t = 0; t < 100; ++t) {
        Vec n(d);
        for (int i = 0; i < d; ++i) n(i) = gauss(rng);
        n.normalize();
        auto [p, m] = separated_pair(g, n);
        double hi = -1e300, lo = 1e300;
        for (const auto& x : r.points) {
          hi = std::max(hi, x.dot(n));
          lo = std::min(lo, x.dot(n));
        }
        CHECK(r.points[static_cast<size_t>(p)].dot(n) == doctest::Approx(hi).epsilon(1e-9));
        CHECK(r.points[static_cast<size_t>(m)].dot(n) == doctest::Approx(lo).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("order enumeration counts") {
  CHECK(enumerate_orders(3, 1000).orders.size() == 1);
  CHECK(enumerate_orders(4, 1000).orders.size() == 3);
  CHECK(enumerate_orders(5, 1000).orders.size() == 12);
  CHECK(enumerate_orders(6, 1000).orders.size() == 60);
  CHECK(enumerate_orders(1, 1000).orders.size() == 1);
  CHECK(enumerate_orders(2, 1000).orders.size() == 1);
  CHECK(enumerate_orders(3, 1000, true).orders.size() == 3);
  CHECK(enumerate_orders(4, 1000, true).orders.size() == 12);
  auto cut = enumerate_orders(6, 7);
  CHECK(cut.truncated);
  CHECK(cut.orders.size() == 7);
  // every enumerated order is its own canonical representative
  for (const auto& o : enumerate_orders(5, 1000).orders) CHECK(canonical_order(o, false) == o);
  CHECK(canonical_order({2, 1, 0, 3}, false) == canonical_order({0, 1, 2, 3}, false));
  CHECK(canonical_order({3, 2, 1, 0}, true) == canonical_order({0, 1, 2, 3}, true));
}

TEST_CASE("direction guess counts") {
  CHECK(edge_guess_choices(0.5, 2).size() == 24);
  CHECK(direction_guess_count(0.5, 2, 1) == 24);
  CHECK(direction_guess_count(0.5, 2, 3) == 24.0 * 24 * 24);
  long long seen = 0;
  bool truncated = enumerate_direction_guesses(0.5, 2, 2, 100, [&](const DirectionGuess& g) {
    CHECK(g.size() == 2);
    ++seen;
    return true;
  });
  CHECK(truncated);
  CHECK(seen == 100);
  seen = 0;
  CHECK_FALSE(enumerate_direction_guesses(0.5, 2, 2, 1000, [&](const DirectionGuess&) { return ++seen, true; }));
  CHECK(seen == 576);
}

TEST_CASE("covering guesses contain their vector") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss(0, 1);
  for (int d : {2, 3, 4}) {
    for (double eps : {0.25, 0.5, 1.0}) {
      double dl = delta(eps, d);
      for (int t = 0; t < 500; ++t) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = gauss(rng) * (t % 3 == 0 ? 1e-3 : 1.0);
        if (t % 5 == 0) v(d - 1) = 0.0;
        auto g = covering_guess(v, dl);
        CHECK(satisfies_bands(v, g, dl));
        CHECK(g.ratio[static_cast<size_t>(g.lmax)] == 1.0);
        CHECK(std::abs(v(g.lmax)) == v.cwiseAbs().maxCoeff());
      }
    }
  }
}
