#pragma once

#include "tspn/base_set.hpp"
#include "tspn/enumeration.hpp"
#include "tspn/geometry.hpp"
#include "tspn/simplex.hpp"

#include <vector>

namespace tspn {

// Per input hyperplane: the elements whose points must lie on its positive
// and negative side.
struct SeparatedPairs {
  std::vector<int> plus;
  std::vector<int> minus;
};

SeparatedPairs compute_separated_pairs(const ArcGraph& g, const std::vector<Hyperplane>& inst);

// Variables: rho for every signed base half-space (2|H_0|), then x_c in
// R^d per configuration element.
struct LpModel {
  lp::Problem problem;
  int dim = 0;
  int num_rho = 0;
  int num_elements = 0;
  int incidence_rows = 0;
  int separation_rows = 0;
  int angle_rows = 0;
  std::vector<int> order;
  bool path_mode = false;

  int x_index(int element, int coord) const { return num_rho + element * dim + coord; }
};

struct LpSolution {
  lp::Status status = lp::Status::NumericalFailure;
  std::vector<double> values;
  double objective = 0.0;
};

// Number of tour edges for k elements.
int edge_count(int k, bool path_mode);

LpModel build_lp(const Configuration& c, const SeparatedPairs& pairs, const std::vector<int>& order,
                 const DirectionGuess& guess, double delta, const BaseSet& base,
                 const std::vector<Hyperplane>& inst, bool path_mode);

LpSolution solve_lp(const LpModel& m);

Tour extract_tour(const LpModel& m, const LpSolution& sol);

// Element points x_c from a solution.
std::vector<Vec> element_points(const LpModel& m, const LpSolution& sol);

// |v_lmax| * sqrt(sum_l r_l^2) with r_lmax = 1. Throws GuessMismatch if v is
// outside the guessed bands.
double approx_length(const Vec& v, const EdgeGuess& g, double delta);

// Edge vectors x_{sigma(k+1)} - x_{sigma(k)} of the tour through pts in order.
std::vector<Vec> tour_edges(const std::vector<Vec>& pts, const std::vector<int>& order, bool path_mode);

}  // namespace tspn
