#pragma once

#include "tspn/geometry.hpp"

namespace tspn {

// {center + shape * u : |u| <= 1}, shape symmetric positive definite.
struct Ellipsoid {
  Vec center;
  Mat shape;

  double log_volume_factor() const;  // log det(shape)
  bool contains(const Vec& x, double tol = 1e-9) const;
};

// Chebyshev center (largest inscribed ball) by LP; returns {center, radius}.
std::pair<Vec, double> chebyshev_ball(const PolytopeH& p);

// Maximum-volume inscribed ellipsoid by a log-barrier Newton method started at
// the Chebyshev center. Throws DegenerateBody for flat polytopes.
Ellipsoid max_inscribed_ellipsoid(const PolytopeH& p, double rel_volume_tol = 1e-6);

// x -> shape^{-1} (x - center): the inscribed ellipsoid becomes the unit ball
// at the origin.
struct AffineMap {
  Mat linear;
  Vec shift;

  Vec apply(const Vec& x) const { return linear * x + shift; }
  AffineMap inverse() const;
};

struct Normalization {
  Ellipsoid ellipsoid;
  AffineMap map;
  PolytopeH image;
  double inscribed_radius = 0.0;  // distance from the origin to the nearest facet of the image
  double outer_radius = 0.0;      // largest vertex norm of the image
};

// Throws DegenerateBody, or ContainmentViolation if the image leaves
// B(0, d (1 + 1e-4)).
Normalization normalize_polytope(const PolytopeH& p);

}  // namespace tspn
