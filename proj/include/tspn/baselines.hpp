#pragma once

#include "tspn/geometry.hpp"
#include "tspn/instance.hpp"

#include <cstdint>
#include <vector>

namespace tspn {

inline constexpr int kHeldKarpMax = 15;

// Exact shortest tour (closed) or Hamiltonian path (open) through the points.
// Throws TooManyPoints beyond kHeldKarpMax.
Tour held_karp(const std::vector<Vec>& points, bool closed = true);

// Order of the exact tour, as indices into points.
std::vector<int> held_karp_order(const std::vector<Vec>& points, bool closed = true);

// Nearest-neighbour start improved by 2-opt; used where exact tours are too
// expensive.
std::vector<int> greedy_two_opt_order(const std::vector<Vec>& points, bool closed = true);

// Shortest tour order: exact up to `exact_limit` points, else greedy + 2-opt.
std::vector<int> short_tour_order(const std::vector<Vec>& points, bool closed, int exact_limit = 12);

struct Box {
  Vec lower;
  Vec upper;
  std::vector<Vec> corners() const;
};

// Axis-aligned box of least sum of side lengths meeting every hyperplane.
Box min_box(const std::vector<Hyperplane>& inst, int d);

// Tour through the box corners. Throws Infeasible if the box LP fails.
ResultRecord min_box_tour(const Instance& inst, bool path_mode = false);

struct LocalSearchOptions {
  int restarts = 8;
  std::uint64_t seed = 1;
  bool path_mode = false;
  int max_rounds = 200;
};

// Heuristic upper bound on the optimum: one waypoint per hyperplane, moved by
// exact per-waypoint minimization, pruning and 2-opt, best of several
// restarts. Never ground truth.
ResultRecord local_search_oracle(const Instance& inst, const LocalSearchOptions& opt = {});

}  // namespace tspn
