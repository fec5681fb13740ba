#include "tspn/baselines.hpp"

#include "tspn/errors.hpp"
#include "tspn/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace tspn {

namespace {

double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

double order_length(const std::vector<Vec>& pts, const std::vector<int>& order, bool closed) {
  double len = 0.0;
  for (size_t k = 0; k + 1 < order.size(); ++k) len += dist(pts[static_cast<size_t>(order[k])], pts[static_cast<size_t>(order[k + 1])]);
  if (closed && order.size() > 1) len += dist(pts[static_cast<size_t>(order.back())], pts[static_cast<size_t>(order.front())]);
  return len;
}

Tour tour_from_order(const std::vector<Vec>& pts, const std::vector<int>& order, bool closed) {
  Tour t;
  t.closed = closed;
  for (int i : order) t.waypoints.push_back(pts[static_cast<size_t>(i)]);
  return t;
}

}  // namespace

std::vector<int> held_karp_order(const std::vector<Vec>& points, bool closed) {
  const int n = static_cast<int>(points.size());
  if (n > kHeldKarpMax) throw Error(ErrorKind::TooManyPoints, std::to_string(n) + " points exceed the exact-tour limit");
  if (n <= 2) {
    std::vector<int> o(static_cast<size_t>(n));
    std::iota(o.begin(), o.end(), 0);
    return o;
  }
  const double inf = std::numeric_limits<double>::infinity();
  const size_t full = (size_t{1} << n);
  std::vector<double> dp(full * static_cast<size_t>(n), inf);
  std::vector<signed char> parent(full * static_cast<size_t>(n), -1);
  auto at = [n](size_t mask, int j) { return mask * static_cast<size_t>(n) + static_cast<size_t>(j); };
  Mat D(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) D(i, j) = dist(points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]);
  if (closed) {
    dp[at(1, 0)] = 0.0;
  } else {
    for (int j = 0; j < n; ++j) dp[at(size_t{1} << j, j)] = 0.0;
  }
  for (size_t mask = 1; mask < full; ++mask) {
    if (closed && !(mask & 1)) continue;
    for (int j = 0; j < n; ++j) {
      double cur = dp[at(mask, j)];
      if (!(mask >> j & 1) || cur == inf) continue;
      for (int k = 0; k < n; ++k) {
        if (mask >> k & 1) continue;
        size_t nm = mask | (size_t{1} << k);
        double cand = cur + D(j, k);
        if (cand < dp[at(nm, k)]) {
          dp[at(nm, k)] = cand;
          parent[at(nm, k)] = static_cast<signed char>(j);
        }
      }
    }
  }
  size_t mask = full - 1;
  int best = -1;
  double best_len = inf;
  for (int j = 0; j < n; ++j) {
    if (closed && j == 0) continue;
    double len = dp[at(mask, j)] + (closed ? D(j, 0) : 0.0);
    if (len < best_len) {
      best_len = len;
      best = j;
    }
  }
  std::vector<int> order;
  int j = best;
  while (j >= 0) {
    order.push_back(j);
    int p = parent[at(mask, j)];
    mask &= ~(size_t{1} << j);
    j = p;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

Tour held_karp(const std::vector<Vec>& points, bool closed) {
  return tour_from_order(points, held_karp_order(points, closed), closed);
}

std::vector<int> greedy_two_opt_order(const std::vector<Vec>& points, bool closed) {
  const int n = static_cast<int>(points.size());
  std::vector<int> order;
  if (n == 0) return order;
  std::vector<bool> used(static_cast<size_t>(n), false);
  order.push_back(0);
  used[0] = true;
  for (int step = 1; step < n; ++step) {
    int last = order.back(), next = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (used[static_cast<size_t>(k)]) continue;
      double dd = dist(points[static_cast<size_t>(last)], points[static_cast<size_t>(k)]);
      if (dd < bd) {
        bd = dd;
        next = k;
      }
    }
    used[static_cast<size_t>(next)] = true;
    order.push_back(next);
  }
  bool improved = true;
  double cur = order_length(points, order, closed);
  while (improved) {
    improved = false;
    for (int i = closed ? 1 : 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::reverse(order.begin() + i, order.begin() + j + 1);
        double len = order_length(points, order, closed);
        if (len < cur - 1e-12) {
          cur = len;
          improved = true;
        } else {
          std::reverse(order.begin() + i, order.begin() + j + 1);
        }
      }
    }
  }
  return order;
}

std::vector<int> short_tour_order(const std::vector<Vec>& points, bool closed, int exact_limit) {
  if (static_cast<int>(points.size()) <= std::min(exact_limit, kHeldKarpMax)) return held_karp_order(points, closed);
  return greedy_two_opt_order(points, closed);
}

std::vector<Vec> Box::corners() const {
  const int d = static_cast<int>(lower.size());
  std::vector<Vec> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec c(d);
    for (int i = 0; i < d; ++i) c(i) = (mask >> i & 1) ? upper(i) : lower(i);
    out.push_back(c);
  }
  return out;
}

Box min_box(const std::vector<Hyperplane>& inst, int d) {
  // Variables: l_0..l_{d-1}, u_0..u_{d-1}.
  lp::Problem prob(2 * d);
  for (int i = 0; i < d; ++i) {
    prob.objective[static_cast<size_t>(d + i)] = 1.0;
    prob.objective[static_cast<size_t>(i)] = -1.0;
    auto& row = prob.add_row(lp::Sense::GreaterEqual, 0.0);
    row.coeffs[static_cast<size_t>(d + i)] = 1.0;
    row.coeffs[static_cast<size_t>(i)] = -1.0;
  }
  for (const auto& h : inst) {
    auto& hi = prob.add_row(lp::Sense::GreaterEqual, h.offset);
    auto& lo = prob.add_row(lp::Sense::LessEqual, h.offset);
    for (int j = 0; j < d; ++j) {
      double a = h.normal(j);
      hi.coeffs[static_cast<size_t>(a >= 0 ? d + j : j)] = a;
      lo.coeffs[static_cast<size_t>(a >= 0 ? j : d + j)] = a;
    }
  }
  auto res = lp::solve(prob);
  if (res.status != lp::Status::Optimal) throw Error(ErrorKind::Infeasible, std::string("box LP ended ") + lp::to_string(res.status));
  Box b;
  b.lower = Eigen::Map<Vec>(res.x.data(), d);
  b.upper = Eigen::Map<Vec>(res.x.data() + d, d);
  return b;
}

ResultRecord min_box_tour(const Instance& inst, bool path_mode) {
  auto t0 = std::chrono::steady_clock::now();
  auto hs = inst.hyperplanes();
  Box box = min_box(hs, inst.dim);
  auto corners = box.corners();
  std::vector<int> order;
  if (static_cast<int>(corners.size()) <= 8) {
    order = held_karp_order(corners, !path_mode);
  } else {
    // Reflected Gray code walks the cube's edges.
    for (int i = 0; i < static_cast<int>(corners.size()); ++i) order.push_back(i ^ (i >> 1));
  }
  auto rec = make_record("min_box", tour_from_order(corners, order, !path_mode), hs);
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

namespace {

struct Stop {
  Vec p;
  int owner;
};

Tour stops_tour(const std::vector<Stop>& s, bool closed) {
  Tour t;
  t.closed = closed;
  for (const auto& x : s) t.waypoints.push_back(x.p);
  return t;
}

// Point of h minimizing |p - a| + |p - b|.
Vec best_on_plane(const Hyperplane& h, const Vec& a, const Vec& b) {
  double sa = h.eval(a);
  Vec bb = b;
  double sb = h.eval(b);
  if ((sa > 0 && sb > 0) || (sa < 0 && sb < 0)) {
    bb = b - 2 * sb * h.normal;
    sb = -sb;
  }
  if (std::abs(sa - sb) < 1e-15) return a - sa * h.normal;
  double lambda = sa / (sa - sb);
  return a + lambda * (bb - a);
}

std::vector<Stop> improve(std::vector<Stop> s, const std::vector<Hyperplane>& hs, bool closed, int max_rounds) {
  auto feasible = [&](const std::vector<Stop>& x) { return tour_feasible(stops_tour(x, closed), hs).feasible; };
  double cur = tour_length(stops_tour(s, closed));
  for (int round = 0; round < max_rounds; ++round) {
    bool improved = false;
    const int n = static_cast<int>(s.size());
    for (int k = 0; k < n && n > 1; ++k) {
      const Hyperplane& h = hs[static_cast<size_t>(s[static_cast<size_t>(k)].owner)];
      bool has_prev = closed || k > 0;
      bool has_next = closed || k + 1 < n;
      Vec target;
      if (has_prev && has_next) {
        target = best_on_plane(h, s[static_cast<size_t>((k + n - 1) % n)].p, s[static_cast<size_t>((k + 1) % n)].p);
      } else {
        const Vec& nb = has_prev ? s[static_cast<size_t>(k - 1)].p : s[static_cast<size_t>(k + 1)].p;
        target = nb - h.eval(nb) * h.normal;
      }
      Vec old = s[static_cast<size_t>(k)].p;
      s[static_cast<size_t>(k)].p = target;
      double len = tour_length(stops_tour(s, closed));
      if (len < cur - 1e-12 && feasible(s)) {
        cur = len;
        improved = true;
      } else {
        s[static_cast<size_t>(k)].p = old;
      }
    }
    for (int k = static_cast<int>(s.size()) - 1; k >= 0 && s.size() > 1; --k) {
      auto trial = s;
      trial.erase(trial.begin() + k);
      if (feasible(trial)) {
        s = std::move(trial);
        cur = tour_length(stops_tour(s, closed));
        improved = true;
      }
    }
    const int m = static_cast<int>(s.size());
    for (int i = closed ? 1 : 0; i < m - 1; ++i) {
      for (int j = i + 1; j < m; ++j) {
        std::reverse(s.begin() + i, s.begin() + j + 1);
        double len = tour_length(stops_tour(s, closed));
        if (len < cur - 1e-12 && feasible(s)) {
          cur = len;
          improved = true;
        } else {
          std::reverse(s.begin() + i, s.begin() + j + 1);
        }
      }
    }
    if (!improved) break;
  }
  return s;
}

}  // namespace

ResultRecord local_search_oracle(const Instance& inst, const LocalSearchOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto hs = inst.hyperplanes();
  const int d = inst.dim;
  const int n = static_cast<int>(hs.size());
  const bool closed = !opt.path_mode;
  // Least-squares point of the hyperplane system anchors the random starts.
  Mat A(n, d);
  Vec c(n);
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    A.row(i) = hs[static_cast<size_t>(i)].normal.transpose();
    c(i) = hs[static_cast<size_t>(i)].offset;
    scale = std::max(scale, std::abs(c(i)));
  }
  Vec anchor = A.completeOrthogonalDecomposition().solve(c);
  std::vector<Stop> best;
  double best_len = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    std::mt19937_64 rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    if (r > 0) std::shuffle(perm.begin(), perm.end(), rng);
    Vec z = anchor;
    if (r > 0) {
      for (int i = 0; i < d; ++i) z(i) += gauss(rng) * scale * 0.5;
    }
    std::vector<Stop> s;
    for (int i : perm) {
      const auto& h = hs[static_cast<size_t>(i)];
      s.push_back(Stop{z - h.eval(z) * h.normal, i});
    }
    // Order the starting stops greedily so 2-opt starts from a sane tour.
    std::vector<Vec> pts;
    for (const auto& x : s) pts.push_back(x.p);
    auto ord = greedy_two_opt_order(pts, closed);
    std::vector<Stop> ordered;
    for (int i : ord) ordered.push_back(s[static_cast<size_t>(i)]);
    ordered = improve(std::move(ordered), hs, closed, opt.max_rounds);
    Tour t = stops_tour(ordered, closed);
    double len = tour_length(t);
    if (len < best_len - 1e-12 || (std::abs(len - best_len) <= 1e-12 && lex_less(t.waypoints, stops_tour(best, closed).waypoints))) {
      best_len = len;
      best = ordered;
    }
  }
  auto rec = make_record("local_search_heuristic", stops_tour(best, closed), hs);
  rec.counters["restarts"] = std::max(1, opt.restarts);
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace tspn
