#pragma once

#include "tspn/ellipsoid.hpp"
#include "tspn/geometry.hpp"

#include <cstdint>
#include <vector>

namespace tspn {

struct RaySet {
  double theta = 0.0;           // 2 pi / m
  int m = 0;                    // |A|
  std::vector<double> angles;   // A = {i theta}
  long long ray_count = 0;      // |A|^(d-1)
};

RaySet ray_set(double eps, int d);

// Unit directions from hyperspherical angles, each angle ranging over A;
// duplicates (near the poles) removed.
std::vector<Vec> ray_directions(const RaySet& rs, int d);

// Facet-membership H-representation of conv(vertices), inward normals.
PolytopeH hrep_of(const PolytopeV& p);

struct SparsifyReport {
  Vec center;
  std::vector<int> selected;     // indices into the input vertex list
  std::vector<Vec> selected_points;
  PolytopeV expanded;            // conv of the (1+eps)-expansion about center
  double containment_margin = 0.0;
  int surface_points = 0;        // |V_0|
  int rays = 0;
  long long bound = 0;           // d * |A|^(d-1)
};

// Input must contain B(0,1) and lie in B(0,d). Throws ContainmentViolation.
SparsifyReport select_sparse_vertices(const PolytopeV& p_norm, double eps);

// Normalizes, selects and maps back. Throws DegenerateBody,
// ContainmentViolation.
SparsifyReport sparsify_polytope(const PolytopeV& p, double eps);

// Margin of points inside conv(hull): min over facets of offset slack; >= 0
// means contained.
double containment_margin(const std::vector<Vec>& hull, const std::vector<Vec>& points);

struct GridSpec {
  Vec anchor;
  double g = 0.0;
  double side = 0.0;  // D'
};

// Bounding-cube anchor and g = D' eps' / (k sqrt(d) (2^d + 1)) with
// k = max(k_eps_d(eps', d), |V|).
GridSpec snap_grid(const PolytopeV& p, double eps_prime);

PolytopeV snap_to_grid(const PolytopeV& p, double eps_prime);
PolytopeV snap_to_grid(const PolytopeV& p, const Vec& anchor, double g);

// The 2^d corners of the grid cell containing v, in reflected Gray order.
std::vector<Vec> cell_corners(const Vec& v, const Vec& anchor, double g);

// Hull of `count` random points on a randomly stretched sphere, so that most
// of them are vertices.
PolytopeV random_polytope(int d, int count, std::uint64_t seed);

// Tour of t's waypoints where each waypoint detours through its cell corners
// and back; visits every vertex of the snapped polytope.
Tour looped_tour(const Tour& t, const Vec& anchor, double g);

}  // namespace tspn
