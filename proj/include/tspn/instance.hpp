#pragma once

#include "tspn/base_set.hpp"
#include "tspn/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tspn {

// n hyperplanes a_1 x_1 + ... + a_d x_d = c with integer coefficients.
struct Instance {
  int dim = 0;
  std::vector<std::vector<long long>> rows;  // each row: a_1..a_d, c

  int size() const { return static_cast<int>(rows.size()); }
  std::vector<Hyperplane> hyperplanes() const;
  bool operator==(const Instance&) const = default;
};

// Header "d n" then n lines of d+1 integers. Blank lines and lines starting
// with '#' are ignored. Throws ParseError, Error(DimensionOutOfRange|ZeroNormal).
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);
Instance load_instance(const std::string& path);

std::vector<std::string> validate_instance(const Instance& inst);

// n hyperplanes with coefficients uniform in [-range, range] (normals
// nonzero).
Instance random_instance(int d, int n, int range, std::uint64_t seed);

struct RunConfig {
  double epsilon = 0.5;
  BaseSetMode base_mode = BaseSetMode::Axis;
  std::string base_file;
  std::optional<double> grid_granularity;
  long long tuple_cap = 2'000'000;
  int order_cap = 2;
  int config_cap = 12;
  // Guess sequences per (C, sigma) are fully enumerated up to this count;
  // beyond it the search uses covering guesses plus refinement.
  long long guess_cap = 64;
  int refine_rounds = 2;
  // Random shift vectors tried when sampling realizable configurations.
  int samples = 64;
  bool path_mode = false;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 = hardware concurrency

  // Throws Error(ParseError) on out-of-range values.
  void validate() const;
};

struct ResultRecord {
  std::string algorithm;
  Tour tour;
  double length = 0.0;
  FeasibilityReport feasibility;
  std::map<std::string, long long> counters;
  double wall_ms = 0.0;
};

ResultRecord make_record(const std::string& algorithm, Tour tour, const std::vector<Hyperplane>& inst);

std::string write_result(const ResultRecord& r);
ResultRecord parse_result(const std::string& text);

}  // namespace tspn
