#include "tspn/instance.hpp"

#include "tspn/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace tspn {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& tok, int line) {
  long long v = 0;
  const char* end = tok.data() + tok.size();
  const char* begin = tok.data();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

bool skippable(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

std::vector<Hyperplane> Instance::hyperplanes() const {
  std::vector<Hyperplane> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    Vec a(dim);
    for (int i = 0; i < dim; ++i) a(i) = static_cast<double>(r[static_cast<size_t>(i)]);
    out.push_back(Hyperplane::make(a, static_cast<double>(r[static_cast<size_t>(dim)])));
  }
  return out;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Instance inst;
  long long n = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto toks = split_ws(line);
    if (n < 0) {
      if (toks.size() != 2) throw ParseError(lineno, "header must be 'd n'");
      long long d = parse_int(toks[0], lineno);
      n = parse_int(toks[1], lineno);
      if (d < kMinDim || d > kMaxDim) {
        throw Error(ErrorKind::DimensionOutOfRange, "dimension " + std::to_string(d) + " outside [2, 4]");
      }
      if (n < 1) throw ParseError(lineno, "instance needs at least one hyperplane");
      inst.dim = static_cast<int>(d);
      continue;
    }
    if (static_cast<long long>(inst.rows.size()) == n) throw ParseError(lineno, "more hyperplane lines than declared");
    if (static_cast<int>(toks.size()) != inst.dim + 1) {
      throw ParseError(lineno, "expected " + std::to_string(inst.dim + 1) + " integers");
    }
    std::vector<long long> row;
    bool nonzero = false;
    for (const auto& t : toks) row.push_back(parse_int(t, lineno));
    for (int i = 0; i < inst.dim; ++i) nonzero = nonzero || row[static_cast<size_t>(i)] != 0;
    if (!nonzero) throw Error(ErrorKind::ZeroNormal, "line " + std::to_string(lineno) + ": all normal coefficients are zero");
    inst.rows.push_back(std::move(row));
  }
  if (n < 0) throw ParseError(lineno, "missing header");
  if (static_cast<long long>(inst.rows.size()) != n) {
    throw ParseError(lineno, "expected " + std::to_string(n) + " hyperplanes, found " + std::to_string(inst.rows.size()));
  }
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream os;
  os << inst.dim << ' ' << inst.rows.size() << '\n';
  for (const auto& r : inst.rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    os << '\n';
  }
  return os.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> warnings;
  auto hs = inst.hyperplanes();
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (hs[i].same_as(hs[j])) {
        warnings.push_back("duplicate hyperplane: line " + std::to_string(i + 1) + " repeats line " + std::to_string(j + 1));
        break;
      }
    }
  }
  bool distinct = false, parallel = hs.size() >= 2;
  for (size_t i = 1; i < hs.size(); ++i) {
    if ((hs[i].normal - hs[0].normal).cwiseAbs().maxCoeff() > kTau) parallel = false;
    if (!hs[i].same_as(hs[0])) distinct = true;
  }
  if (parallel && distinct) warnings.push_back("all hyperplanes are parallel; the optimum is a back-and-forth segment");
  return warnings;
}

Instance random_instance(int d, int n, int range, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coef(-range, range);
  Instance inst;
  inst.dim = d;
  while (static_cast<int>(inst.rows.size()) < n) {
    std::vector<long long> row;
    bool nonzero = false;
    for (int i = 0; i <= d; ++i) row.push_back(coef(rng));
    for (int i = 0; i < d; ++i) nonzero = nonzero || row[static_cast<size_t>(i)] != 0;
    if (nonzero) inst.rows.push_back(std::move(row));
  }
  return inst;
}

void RunConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 2.0)) throw ParseError(0, "epsilon must lie in (0, 2]");
  if (order_cap < 1 || config_cap < 1 || guess_cap < 1 || samples < 1) throw ParseError(0, "caps must be >= 1");
  if (refine_rounds < 0) throw ParseError(0, "refine rounds must be >= 0");
  if (jobs < 0) throw ParseError(0, "jobs must be >= 0");
  if (base_mode == BaseSetMode::File && base_file.empty()) throw ParseError(0, "base-set file path missing");
  if (grid_granularity && !(*grid_granularity > 0.0 && *grid_granularity <= 1.0)) {
    throw ParseError(0, "grid granularity must lie in (0, 1]");
  }
}

ResultRecord make_record(const std::string& algorithm, Tour tour, const std::vector<Hyperplane>& inst) {
  ResultRecord r;
  r.algorithm = algorithm;
  r.length = tour_length(tour);
  r.feasibility = tour_feasible(tour, inst);
  r.tour = std::move(tour);
  return r;
}

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec json_vec(const json& a) {
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

}  // namespace

std::string write_result(const ResultRecord& r) {
  json j;
  j["algorithm"] = r.algorithm;
  j["length"] = r.length;
  j["feasible"] = r.feasibility.feasible;
  j["unvisited"] = r.feasibility.unvisited();
  json wps = json::array();
  for (const auto& p : r.tour.waypoints) wps.push_back(vec_json(p));
  j["waypoints"] = wps;
  j["closed"] = r.tour.closed;
  json wit = json::array();
  for (const auto& w : r.feasibility.witnesses) wit.push_back(w ? vec_json(*w) : json(nullptr));
  j["witnesses"] = wit;
  json counters = json::object();
  for (const auto& [k, v] : r.counters) counters[k] = v;
  j["counters"] = counters;
  j["wall_ms"] = r.wall_ms;
  return j.dump(2);
}

ResultRecord parse_result(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  try {
    ResultRecord r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.length = j.at("length").get<double>();
    r.feasibility.feasible = j.at("feasible").get<bool>();
    for (const auto& w : j.at("waypoints")) r.tour.waypoints.push_back(json_vec(w));
    r.tour.closed = j.value("closed", true);
    for (const auto& w : j.at("witnesses")) {
      if (w.is_null()) {
        r.feasibility.visited.push_back(false);
        r.feasibility.witnesses.emplace_back(std::nullopt);
      } else {
        r.feasibility.visited.push_back(true);
        r.feasibility.witnesses.emplace_back(json_vec(w));
      }
    }
    for (const auto& [k, v] : j.at("counters").items()) r.counters[k] = v.get<long long>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace tspn
