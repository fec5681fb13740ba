#pragma once

#include "tspn/geometry.hpp"

#include <optional>
#include <vector>

namespace tspn {

// Outward facet: <normal, x> <= offset for all hull points, normal unit.
struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> points;  // indices of input points lying on the facet
};

// Facets of conv(pts) for a full-dimensional point set in d <= 4, found by
// testing every affinely independent d-subset. Returns empty if the set is
// not full-dimensional.
std::vector<Facet> hull_facets(const std::vector<Vec>& pts, double tol = kTau);

// Affine dimension of the point set.
int affine_rank(const std::vector<Vec>& pts, double tol = 1e-9);

// Indices of points that are not convex combinations of the others.
std::vector<int> extreme_points(const std::vector<Vec>& pts, double tol = kTau);

// Weights lambda >= 0, sum 1, with sum lambda_i p_i = x; nullopt if x is
// outside the hull.
std::optional<std::vector<double>> convex_combination(const std::vector<Vec>& pts, const Vec& x,
                                                      double tol = 1e-7);

bool in_hull(const std::vector<Vec>& pts, const Vec& x, double tol = 1e-7);

// Reduces a convex combination to affinely independent support. Returns the
// surviving indices and their weights.
std::pair<std::vector<int>, std::vector<double>> caratheodory_reduce(const std::vector<Vec>& pts,
                                                                     std::vector<double> weights);

}  // namespace tspn
