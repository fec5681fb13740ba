#pragma once

#include "tspn/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tspn {

enum class BaseSetMode { Full, Axis, File };
enum class BaseProvenance { FullGrid, Axis, Custom };

const char* to_string(BaseProvenance p);

// H_0: hyperplanes through the origin. Signed half-space index 2k is the
// side with inward normal +n_k, index 2k+1 the side with inward normal -n_k.
struct BaseSet {
  int dim = 0;
  std::vector<Hyperplane> hyperplanes;
  BaseProvenance provenance = BaseProvenance::Axis;

  int size() const { return static_cast<int>(hyperplanes.size()); }
  int signed_count() const { return 2 * size(); }
  Vec signed_normal(int s) const {
    const Vec& n = hyperplanes[static_cast<size_t>(s / 2)].normal;
    return (s % 2 == 0) ? Vec(n) : Vec(-n);
  }
  HalfSpace signed_halfspace(int s, double rho) const { return HalfSpace{signed_normal(s), rho}; }
  // True if every coordinate hyperplane is present.
  bool has_axis_normals() const;
};

double k_eps_d(double eps, int d);
double grid_granularity(double eps, int d);

// Hyperplane through d points, canonical; nullopt if they are affinely
// dependent.
std::optional<Hyperplane> hyperplane_from_tuple(const std::vector<Vec>& pts);

struct BaseSetOptions {
  // Overrides grid_granularity(eps, d) in full mode.
  std::optional<double> granularity;
  // Full mode refuses grids with more d-tuples than this.
  long long tuple_cap = 2'000'000;
  // Normals file for File mode.
  std::string file;
};

// Throws BaseSetTooLarge, TrivialBaseSet, ParseError.
BaseSet build_base_set(BaseSetMode mode, double eps, int d, const BaseSetOptions& opt = {});

// One normal per line, d reals; blank lines and '#' comments are skipped.
BaseSet parse_base_set(const std::string& text, int d);

}  // namespace tspn
