#pragma once

#include "tspn/base_set.hpp"
#include "tspn/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tspn {

// A configuration element: sorted signed half-space indices into the base set.
using Element = std::vector<int>;

struct Configuration {
  std::vector<Element> elements;  // sorted

  int size() const { return static_cast<int>(elements.size()); }
  void normalize();
  bool operator==(const Configuration&) const = default;
  bool operator<(const Configuration& o) const { return elements < o.elements; }
};

struct Arc {
  int from = 0;
  int to = 0;
  Vec dir;
};

struct ArcGraph {
  int nodes = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;  // arc indices per node, sorted by target
};

// A configuration together with a point per element that realizes it.
struct Realization {
  Configuration config;
  std::vector<Vec> points;  // points[i] realizes config.elements[i]
  std::vector<double> rho;  // shift per signed half-space
};

double delta(double eps, int d);
std::vector<double> ratio_grid(double delta);

// Rank-d check on the boundary normals of an element with |e| >= d.
bool is_valid_element(const BaseSet& base, const Element& e);
bool is_antichain(const std::vector<Element>& elements);

// C(P): per vertex, the facet half-spaces through it when P is full
// dimensional, otherwise all tight half-spaces.
Realization configuration_of(const BaseSet& base, const std::vector<double>& rho);

enum class ConfigMode { BruteForce, Realizable };

struct ConfigOptions {
  ConfigMode mode = ConfigMode::Realizable;
  long long cap = 1000;
  int max_element_size = 0;  // brute force only; 0 means d
  int max_config_size = 0;   // brute force only; 0 means unlimited
  int samples = 256;         // realizable only
  std::uint64_t seed = 1;
};

struct ConfigEnumeration {
  std::vector<Realization> items;  // realization points empty in brute-force mode
  bool truncated = false;
};

ConfigEnumeration enumerate_configurations(const BaseSet& base, const ConfigOptions& opt);

// Throws DegenerateConfiguration for an invalid element.
ArcGraph build_arc_graph(const BaseSet& base, const Configuration& c);

// Token walks maximizing and minimizing <x, n>. Throws DegenerateConfiguration
// when the token revisits a node.
std::pair<int, int> separated_pair(const ArcGraph& g, const Vec& n);

struct OrderEnumeration {
  std::vector<std::vector<int>> orders;
  bool truncated = false;
};

// Closed: cyclic orders up to rotation and reflection, (k-1)!/2 for k >= 3.
// Path: orders up to reversal, k!/2 for k >= 2.
OrderEnumeration enumerate_orders(int k, long long cap, bool path_mode = false);

// Canonical representative of an order under the same symmetries.
std::vector<int> canonical_order(std::vector<int> order, bool path_mode);

// Guess for one tour edge.
struct EdgeGuess {
  int lmax = 0;
  int sgn_max = 1;
  std::vector<double> ratio;  // ratio[lmax] == 1
  std::vector<int> sign;      // sign[lmax] == sgn_max
  std::vector<bool> small;    // ratio stands for the band [0, delta]

  bool operator==(const EdgeGuess& o) const {
    return lmax == o.lmax && sgn_max == o.sgn_max && ratio == o.ratio && sign == o.sign && small == o.small;
  }
};

using DirectionGuess = std::vector<EdgeGuess>;

// Ratio band [lower, upper] for coordinate l of a guess.
std::pair<double, double> ratio_band(const EdgeGuess& g, int l, double delta);

// All choices for a single edge: d * 2 * (2 |grid|)^(d-1).
std::vector<EdgeGuess> edge_guess_choices(double delta, int d);

// Product over edges, streamed in odometer order; fn returns false to stop.
// Returns true if the stream hit the cap.
bool enumerate_direction_guesses(double delta, int d, int edges, long long cap,
                                 const std::function<bool(const DirectionGuess&)>& fn);

double direction_guess_count(double delta, int d, int edges);

// The guess whose bands contain v: l_max is the first coordinate of largest
// magnitude, the other ratios are snapped to the grid (or the small band).
EdgeGuess covering_guess(const Vec& v, double delta);

bool satisfies_bands(const Vec& v, const EdgeGuess& g, double delta, double tol = 1e-12);

}  // namespace tspn
