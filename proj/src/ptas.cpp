#include "tspn/ptas.hpp"

#include "tspn/baselines.hpp"
#include "tspn/enumeration.hpp"
#include "tspn/errors.hpp"
#include "tspn/lp_model.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace tspn {

std::vector<double> para_hull_shifts(const BaseSet& base, const std::vector<Vec>& pts) {
  std::vector<double> rho(static_cast<size_t>(base.signed_count()), INFINITY);
  for (int s = 0; s < base.signed_count(); ++s) {
    Vec n = base.signed_normal(s);
    for (const auto& p : pts) rho[static_cast<size_t>(s)] = std::min(rho[static_cast<size_t>(s)], n.dot(p));
  }
  return rho;
}

namespace {

struct Counters {
  std::atomic<long long> triples{0}, optimal{0}, infeasible{0}, unbounded{0}, numerical{0}, candidates{0};
  std::atomic<long long> covering_items{0};
};

struct Best {
  bool found = false;
  Tour tour;
  double length = INFINITY;

  void offer(const Tour& t, double len) {
    if (!found || len < length - 1e-12 || (std::abs(len - length) <= 1e-12 && lex_less(t.waypoints, tour.waypoints))) {
      found = true;
      tour = t;
      length = len;
    }
  }
};

struct Prepared {
  Realization real;
  ArcGraph graph;
  SeparatedPairs pairs;
};

struct WorkItem {
  int prepared;
  std::vector<int> order;
};

}  // namespace

namespace {

ResultRecord run_ptas_once(const Instance& inst, const RunConfig& cfg, const CandidateHook& hook) {
  auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  const int d = inst.dim;
  const auto hs = inst.hyperplanes();
  BaseSetOptions bopt;
  bopt.granularity = cfg.grid_granularity;
  bopt.tuple_cap = cfg.tuple_cap;
  bopt.file = cfg.base_file;
  const BaseSet base = build_base_set(cfg.base_mode, cfg.epsilon, d, bopt);
  // Two (1+eps') factors compose to (1+eps): one from the guessed objective,
  // one from comparing the LP optimum against a reference tour.
  const double eps_prime = std::sqrt(1.0 + cfg.epsilon) - 1.0;
  const double dlt = delta(eps_prime, d);
  const bool closed = !cfg.path_mode;

  std::map<std::string, long long> counters;
  std::vector<Realization> reals;
  std::set<Configuration> seen;
  auto add_real = [&](Realization r) {
    if (static_cast<int>(reals.size()) >= cfg.config_cap) {
      counters["configs_truncated"] = 1;
      return;
    }
    if (seen.insert(r.config).second) reals.push_back(std::move(r));
  };
  auto try_seed = [&](const std::vector<Vec>& pts) {
    try {
      add_real(configuration_of(base, para_hull_shifts(base, pts)));
    } catch (const Error&) {
      ++counters["seeds_failed"];
    }
  };

  try {
    try_seed(min_box(hs, d).corners());
  } catch (const Error&) {
    ++counters["seeds_failed"];
  }
  LocalSearchOptions lso;
  lso.restarts = 4;
  lso.seed = cfg.seed;
  lso.path_mode = cfg.path_mode;
  try_seed(local_search_oracle(inst, lso).tour.waypoints);

  ConfigOptions copt;
  copt.mode = ConfigMode::Realizable;
  copt.cap = cfg.config_cap;
  copt.samples = cfg.samples;
  copt.seed = cfg.seed;
  auto sampled = enumerate_configurations(base, copt);
  for (auto& r : sampled.items) add_real(std::move(r));
  if (sampled.truncated) counters["configs_truncated"] = 1;
  counters["configs"] = static_cast<long long>(reals.size());

  std::vector<Prepared> prepared;
  std::vector<WorkItem> items;
  long long degenerate = 0;
  bool orders_truncated = false;
  for (auto& r : reals) {
    Prepared p;
    try {
      p.graph = build_arc_graph(base, r.config);
      p.pairs = compute_separated_pairs(p.graph, hs);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateConfiguration) throw;
      ++degenerate;
      continue;
    }
    p.real = std::move(r);
    const int idx = static_cast<int>(prepared.size());
    const int k = p.real.config.size();
    std::set<std::vector<int>> orders;
    auto seed_order = canonical_order(short_tour_order(p.real.points, closed), cfg.path_mode);
    orders.insert(seed_order);
    items.push_back(WorkItem{idx, seed_order});
    auto en = enumerate_orders(k, cfg.order_cap, cfg.path_mode);
    orders_truncated = orders_truncated || en.truncated;
    for (auto& o : en.orders) {
      if (orders.insert(o).second) items.push_back(WorkItem{idx, o});
    }
    prepared.push_back(std::move(p));
  }
  counters["configs_degenerate"] = degenerate;
  counters["orders_truncated"] = orders_truncated ? 1 : 0;
  counters["work_items"] = static_cast<long long>(items.size());

  Counters ctr;
  std::mutex mu;
  std::exception_ptr failure;
  std::vector<Best> item_best(items.size());

  auto process = [&](size_t w) {
    const WorkItem& item = items[w];
    const Prepared& p = prepared[static_cast<size_t>(item.prepared)];
    const int edges = edge_count(p.real.config.size(), cfg.path_mode);
    Best& best = item_best[w];
    auto solve_guess = [&](const DirectionGuess& g) -> std::optional<std::vector<Vec>> {
      ++ctr.triples;
      LpModel m = build_lp(p.real.config, p.pairs, item.order, g, dlt, base, hs, cfg.path_mode);
      LpSolution sol = solve_lp(m);
      switch (sol.status) {
        case lp::Status::Optimal: ++ctr.optimal; break;
        case lp::Status::Infeasible: ++ctr.infeasible; return std::nullopt;
        case lp::Status::Unbounded: ++ctr.unbounded; return std::nullopt;
        case lp::Status::NumericalFailure: ++ctr.numerical; return std::nullopt;
      }
      Tour t = extract_tour(m, sol);
      FeasibilityReport rep = tour_feasible(t, hs);
      if (hook) {
        std::lock_guard<std::mutex> lock(mu);
        hook(t, rep);
      }
      if (!rep.feasible) throw Error(ErrorKind::InternalAssertion, "LP optimum fails the feasibility recheck");
      ++ctr.candidates;
      best.offer(t, tour_length(t));
      return element_points(m, sol);
    };
    if (direction_guess_count(dlt, d, edges) <= static_cast<double>(cfg.guess_cap)) {
      enumerate_direction_guesses(dlt, d, edges, cfg.guess_cap, [&](const DirectionGuess& g) {
        solve_guess(g);
        return true;
      });
      return;
    }
    ++ctr.covering_items;
    auto guess_for = [&](const std::vector<Vec>& pts) {
      DirectionGuess g;
      for (const auto& e : tour_edges(pts, item.order, cfg.path_mode)) g.push_back(covering_guess(e, dlt));
      return g;
    };
    DirectionGuess g = guess_for(p.real.points);
    for (int round = 0; round <= cfg.refine_rounds; ++round) {
      auto pts = solve_guess(g);
      if (!pts) break;
      DirectionGuess next = guess_for(*pts);
      if (next == g) break;
      g = std::move(next);
    }
  };

  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(std::max<size_t>(items.size(), 1)));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t w = next++;
      if (w >= items.size()) return;
      try {
        process(w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = items.size();
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Best best;
  for (const auto& b : item_best) {
    if (b.found) best.offer(b.tour, b.length);
  }
  counters["triples"] = ctr.triples;
  counters["lp_optimal"] = ctr.optimal;
  counters["lp_infeasible"] = ctr.infeasible;
  counters["lp_unbounded"] = ctr.unbounded;
  counters["lp_numerical_failure"] = ctr.numerical;
  counters["candidates"] = ctr.candidates;
  counters["guesses_truncated"] = ctr.covering_items;
  if (!best.found) {
    throw Error(ErrorKind::NoCandidateFound, "no LP produced a tour (" + std::to_string(ctr.triples.load()) + " triples, " +
                                                 std::to_string(degenerate) + " degenerate configurations)");
  }
  auto rec = make_record("ptas", best.tour, hs);
  rec.counters = std::move(counters);
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// Cut a closed tour at its longest edge.
Tour open_at_longest_edge(const Tour& t) {
  const size_t m = t.waypoints.size();
  Tour out;
  out.closed = false;
  if (m < 2) {
    out.waypoints = t.waypoints;
    return out;
  }
  size_t cut = 0;
  double longest = -1.0;
  for (size_t i = 0; i < m; ++i) {
    double len = (t.waypoints[(i + 1) % m] - t.waypoints[i]).norm();
    if (len > longest) {
      longest = len;
      cut = i;
    }
  }
  for (size_t i = 1; i <= m; ++i) out.waypoints.push_back(t.waypoints[(cut + i) % m]);
  return out;
}

}  // namespace

// The capped search visits different configurations in the two modes, so in
// path mode the closed search also runs and its tour, opened, competes. A
// path therefore never comes out longer than the closed tour.
ResultRecord run_ptas(const Instance& inst, const RunConfig& cfg, const CandidateHook& hook) {
  if (!cfg.path_mode) return run_ptas_once(inst, cfg, hook);
  auto t0 = std::chrono::steady_clock::now();
  auto rec = run_ptas_once(inst, cfg, hook);
  RunConfig closed_cfg = cfg;
  closed_cfg.path_mode = false;
  long long opened = 0;
  try {
    auto closed = run_ptas_once(inst, closed_cfg, hook);
    rec.counters["closed_candidates"] = closed.counters["candidates"];
    Tour t = open_at_longest_edge(closed.tour);
    if (tour_length(t) < rec.length) {
      auto counters = std::move(rec.counters);
      rec = make_record("ptas", t, inst.hyperplanes());
      rec.counters = std::move(counters);
      opened = 1;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoCandidateFound) throw;
  }
  rec.counters["opened_closed_tour"] = opened;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace tspn
