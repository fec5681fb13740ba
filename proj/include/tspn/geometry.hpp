#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace tspn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Absolute tolerance on unit-normal data.
inline constexpr double kTau = 1e-9;
inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 4;

// {x : <normal, x> = offset}, normal stored with unit length and the first
// nonzero coordinate positive so that equal hyperplanes compare equal.
struct Hyperplane {
  Vec normal;
  double offset = 0.0;

  // Throws ZeroNormal if a == 0.
  static Hyperplane make(const Vec& a, double c);

  int dim() const { return static_cast<int>(normal.size()); }
  double eval(const Vec& x) const { return normal.dot(x) - offset; }
  bool contains(const Vec& x, double tol = kTau) const;
  bool same_as(const Hyperplane& other, double tol = kTau) const;
};

// {x : <normal, x> >= offset}; normal is unit length and points inward.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;

  double slack(const Vec& x) const { return normal.dot(x) - offset; }
  bool contains(const Vec& x, double tol = kTau) const { return slack(x) >= -tol; }
};

struct PolytopeH {
  std::vector<HalfSpace> halfspaces;
  int dim = 0;

  // Verifies non-emptiness and boundedness with 2d LPs. Throws EmptyPolytope
  // or UnboundedPolytope.
  static PolytopeH make(std::vector<HalfSpace> hs);
  bool contains(const Vec& x, double tol = kTau) const;
};

struct PolytopeV {
  std::vector<Vec> vertices;

  // Dedups within 10 tau and drops points inside the hull of the rest.
  static PolytopeV from_points(const std::vector<Vec>& pts, double tol = kTau);
  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
};

struct Tour {
  std::vector<Vec> waypoints;
  bool closed = true;
};

struct FeasibilityReport {
  std::vector<bool> visited;
  std::vector<std::optional<Vec>> witnesses;
  bool feasible = true;

  std::vector<int> unvisited() const;
};

// Clusters points closer than radius and replaces each cluster by its centroid.
// Cluster order follows first appearance.
std::vector<Vec> dedup_points(const std::vector<Vec>& pts, double radius);

PolytopeV vertex_enumerate(const PolytopeH& p, double tol = kTau);

bool polytope_intersects_hyperplane(const PolytopeV& p, const Hyperplane& h, double tol = kTau);

FeasibilityReport tour_feasible(const Tour& t, const std::vector<Hyperplane>& inst, double tol = kTau);

double tour_length(const Tour& t);

std::vector<Vec> scale_points(const std::vector<Vec>& ps, const Vec& center, double factor);

// keep holds waypoint indices; they are visited in increasing order, which
// preserves the cyclic order of t. Throws EmptyKeepSet.
Tour shortcut_tour(const Tour& t, const std::vector<int>& keep);

// Rank of a set of row vectors, using a relative threshold.
int matrix_rank(const Mat& rows, double tol = 1e-9);

// Lexicographic comparison with exact doubles; used for deterministic ties.
bool lex_less(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace tspn
