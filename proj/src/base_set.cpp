#include "tspn/base_set.hpp"

#include "tspn/combinatorics.hpp"
#include "tspn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace tspn {

const char* to_string(BaseProvenance p) {
  switch (p) {
    case BaseProvenance::FullGrid: return "full-grid";
    case BaseProvenance::Axis: return "axis";
    case BaseProvenance::Custom: return "custom";
  }
  return "unknown";
}

bool BaseSet::has_axis_normals() const {
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e(i) = 1.0;
    bool found = false;
    for (const auto& h : hyperplanes) found = found || (h.normal - e).cwiseAbs().maxCoeff() <= kTau;
    if (!found) return false;
  }
  return true;
}

double k_eps_d(double eps, int d) {
  double angle = std::atan(eps / std::sqrt(static_cast<double>(d) * d - 1.0));
  // The guard keeps exact quotients such as 2pi/(pi/6) = 12 from rounding up.
  double steps = std::ceil(2.0 * std::numbers::pi / angle - 1e-9);
  return std::pow(steps * std::sqrt(static_cast<double>(d)), d - 1);
}

double grid_granularity(double eps, int d) {
  return eps / (k_eps_d(eps, d) * std::sqrt(static_cast<double>(d)) * (std::pow(2.0, d) + 1.0));
}

std::optional<Hyperplane> hyperplane_from_tuple(const std::vector<Vec>& pts) {
  const int d = static_cast<int>(pts.front().size());
  if (static_cast<int>(pts.size()) != d) return std::nullopt;
  Mat M(d - 1, d);
  for (int r = 1; r < d; ++r) M.row(r - 1) = (pts[static_cast<size_t>(r)] - pts[0]).transpose();
  if (matrix_rank(M, 1e-12) < d - 1) return std::nullopt;
  Eigen::FullPivLU<Mat> lu(M);
  Vec n = lu.kernel().col(0);
  return Hyperplane::make(n, n.dot(pts[0]));
}

namespace {

using Key = std::vector<long long>;

Key key_of(const Vec& unit) {
  Key k;
  for (Eigen::Index i = 0; i < unit.size(); ++i) k.push_back(std::llround(unit(i) * 1e9));
  return k;
}

void check_nontrivial(const BaseSet& b) {
  if (b.hyperplanes.empty()) throw Error(ErrorKind::TrivialBaseSet, "empty base set");
  Mat N(b.size(), b.dim);
  for (int i = 0; i < b.size(); ++i) N.row(i) = b.hyperplanes[static_cast<size_t>(i)].normal.transpose();
  // With both sides of every hyperplane available, a bounded full-dimensional
  // member of para(H) exists iff the normals span R^d.
  if (matrix_rank(N) < b.dim) throw Error(ErrorKind::TrivialBaseSet, "base normals do not span R^d");
}

BaseSet axis_base(int d) {
  BaseSet b;
  b.dim = d;
  b.provenance = BaseProvenance::Axis;
  std::vector<std::pair<int, Vec>> cand;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    Vec v(d);
    int c = code, support = 0;
    for (int i = 0; i < d; ++i) {
      v(i) = static_cast<double>(c % 3) - 1.0;
      c /= 3;
      if (v(i) != 0) ++support;
    }
    if (support == 0) continue;
    int first = 0;
    while (v(first) == 0) ++first;
    if (v(first) < 0) continue;
    cand.emplace_back(support, v);
  }
  // Coordinate hyperplanes first, then by support size, then lexicographically
  // descending so that (1,1) precedes (1,-1).
  std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    for (Eigen::Index i = 0; i < a.second.size(); ++i) {
      if (a.second(i) != b.second(i)) return a.second(i) > b.second(i);
    }
    return false;
  });
  for (const auto& [s, v] : cand) b.hyperplanes.push_back(Hyperplane::make(v, 0.0));
  return b;
}

BaseSet full_base(double eps, int d, const BaseSetOptions& opt) {
  double g = opt.granularity ? *opt.granularity : grid_granularity(eps, d);
  long long per_axis = static_cast<long long>(std::floor(1.0 / g + 1e-9)) + 1;
  double npts = std::pow(static_cast<double>(per_axis), d);
  double tuples = 1.0;
  for (int i = 0; i < d; ++i) tuples *= (npts - i) / (i + 1);
  if (tuples > static_cast<double>(opt.tuple_cap)) {
    std::ostringstream os;
    os << "grid of granularity " << g << " has " << tuples << " d-tuples (cap " << opt.tuple_cap << ")";
    throw Error(ErrorKind::BaseSetTooLarge, os.str());
  }
  std::vector<Vec> grid;
  const long long n = static_cast<long long>(npts);
  for (long long code = 0; code < n; ++code) {
    Vec p(d);
    long long c = code;
    for (int i = 0; i < d; ++i) {
      p(i) = static_cast<double>(c % per_axis) * g;
      c /= per_axis;
    }
    grid.push_back(p);
  }
  std::map<Key, Vec> uniq;
  std::vector<Vec> tuple(static_cast<size_t>(d));
  for_each_combination(static_cast<int>(grid.size()), d, [&](const std::vector<int>& idx) {
    for (int i = 0; i < d; ++i) tuple[static_cast<size_t>(i)] = grid[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    auto h = hyperplane_from_tuple(tuple);
    if (h) uniq.emplace(key_of(h->normal), h->normal);
    return true;
  });
  BaseSet b;
  b.dim = d;
  b.provenance = BaseProvenance::FullGrid;
  for (const auto& [k, n] : uniq) b.hyperplanes.push_back(Hyperplane::make(n, 0.0));
  return b;
}

}  // namespace

BaseSet parse_base_set(const std::string& text, int d) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<Key, size_t> seen;
  BaseSet b;
  b.dim = d;
  b.provenance = BaseProvenance::Custom;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<double> vals;
    std::string tok;
    while (ls >> tok) {
      try {
        size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw ParseError(lineno, "bad number '" + tok + "'");
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad number '" + tok + "'");
      }
    }
    if (vals.empty()) continue;
    if (static_cast<int>(vals.size()) != d) throw ParseError(lineno, "expected " + std::to_string(d) + " reals");
    Vec v = Eigen::Map<Vec>(vals.data(), d);
    Hyperplane h = Hyperplane::make(v, 0.0);
    if (seen.emplace(key_of(h.normal), b.hyperplanes.size()).second) b.hyperplanes.push_back(h);
  }
  check_nontrivial(b);
  return b;
}

BaseSet build_base_set(BaseSetMode mode, double eps, int d, const BaseSetOptions& opt) {
  if (d < kMinDim || d > kMaxDim) throw Error(ErrorKind::DimensionOutOfRange, "dimension must lie in [2, 4]");
  BaseSet b;
  switch (mode) {
    case BaseSetMode::Axis: b = axis_base(d); break;
    case BaseSetMode::Full: b = full_base(eps, d, opt); break;
    case BaseSetMode::File: {
      std::ifstream f(opt.file);
      if (!f) throw ParseError(0, "cannot open base-set file " + opt.file);
      std::stringstream ss;
      ss << f.rdbuf();
      b = parse_base_set(ss.str(), d);
      break;
    }
  }
  check_nontrivial(b);
  return b;
}

}  // namespace tspn
