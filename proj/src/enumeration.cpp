#include "tspn/enumeration.hpp"

#include "tspn/combinatorics.hpp"
#include "tspn/errors.hpp"
#include "tspn/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace tspn {

void Configuration::normalize() {
  for (auto& e : elements) std::sort(e.begin(), e.end());
  std::sort(elements.begin(), elements.end());
}

double delta(double eps, int d) {
  double a = std::sqrt(((1 + eps) * (1 + eps) - 1) / d);
  double b = std::sqrt((1 - 1 / ((1 + eps) * (1 + eps))) / d);
  return std::min({a, b, eps});
}

std::vector<double> ratio_grid(double delta) {
  std::vector<double> g{delta / 2};
  double r = (1 + delta) * delta;
  g.push_back(r);
  while (r < 1.0) {
    r *= (1 + delta) * (1 + delta);
    g.push_back(r);
  }
  return g;
}

bool is_valid_element(const BaseSet& base, const Element& e) {
  const int d = base.dim;
  if (static_cast<int>(e.size()) < d) return false;
  for (size_t i = 1; i < e.size(); ++i) {
    if (e[i] == e[i - 1]) return false;
  }
  Mat N(static_cast<Eigen::Index>(e.size()), d);
  for (size_t i = 0; i < e.size(); ++i) N.row(static_cast<Eigen::Index>(i)) = base.signed_normal(e[i]).transpose();
  return matrix_rank(N) == d;
}

bool is_antichain(const std::vector<Element>& elements) {
  for (size_t i = 0; i < elements.size(); ++i) {
    for (size_t j = 0; j < elements.size(); ++j) {
      if (i == j) continue;
      if (std::includes(elements[j].begin(), elements[j].end(), elements[i].begin(), elements[i].end())) return false;
    }
  }
  return true;
}

Realization configuration_of(const BaseSet& base, const std::vector<double>& rho) {
  PolytopeH p;
  p.dim = base.dim;
  for (int s = 0; s < base.signed_count(); ++s) p.halfspaces.push_back(base.signed_halfspace(s, rho[static_cast<size_t>(s)]));
  PolytopeV v = vertex_enumerate(p);
  const int d = base.dim;
  const int m = base.signed_count();
  const int nv = static_cast<int>(v.vertices.size());
  auto tight_tol = [](const Vec& x) { return 1e-7 * (1.0 + x.cwiseAbs().maxCoeff()); };
  std::vector<std::vector<bool>> tight(static_cast<size_t>(nv), std::vector<bool>(static_cast<size_t>(m), false));
  for (int i = 0; i < nv; ++i) {
    const Vec& x = v.vertices[static_cast<size_t>(i)];
    for (int s = 0; s < m; ++s) {
      tight[static_cast<size_t>(i)][static_cast<size_t>(s)] = std::abs(p.halfspaces[static_cast<size_t>(s)].slack(x)) <= tight_tol(x);
    }
  }
  const bool full = affine_rank(v.vertices) == d;
  std::vector<bool> facet(static_cast<size_t>(m), !full);
  if (full) {
    for (int s = 0; s < m; ++s) {
      std::vector<Vec> on;
      for (int i = 0; i < nv; ++i) {
        if (tight[static_cast<size_t>(i)][static_cast<size_t>(s)]) on.push_back(v.vertices[static_cast<size_t>(i)]);
      }
      facet[static_cast<size_t>(s)] = static_cast<int>(on.size()) >= d && affine_rank(on) == d - 1;
    }
  }
  std::vector<std::pair<Element, Vec>> items;
  for (int i = 0; i < nv; ++i) {
    Element e;
    for (int s = 0; s < m; ++s) {
      if (tight[static_cast<size_t>(i)][static_cast<size_t>(s)] && facet[static_cast<size_t>(s)]) e.push_back(s);
    }
    items.emplace_back(std::move(e), v.vertices[static_cast<size_t>(i)]);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Realization r;
  r.rho = rho;
  for (auto& [e, x] : items) {
    r.config.elements.push_back(std::move(e));
    r.points.push_back(std::move(x));
  }
  return r;
}

namespace {

void brute_force(const BaseSet& base, const ConfigOptions& opt, ConfigEnumeration& out) {
  const int d = base.dim;
  const int m = base.signed_count();
  const int max_size = opt.max_element_size > 0 ? opt.max_element_size : d;
  std::vector<Element> valid;
  for (int size = d; size <= std::min(max_size, m); ++size) {
    for_each_combination(m, size, [&](const std::vector<int>& idx) {
      if (is_valid_element(base, idx)) valid.push_back(idx);
      return true;
    });
  }
  const int nvalid = static_cast<int>(valid.size());
  const int max_card = opt.max_config_size > 0 ? std::min(opt.max_config_size, nvalid) : nvalid;
  long long count = 0;
  for (int card = 1; card <= max_card && !out.truncated; ++card) {
    for_each_combination(nvalid, card, [&](const std::vector<int>& idx) {
      std::vector<Element> elems;
      for (int i : idx) elems.push_back(valid[static_cast<size_t>(i)]);
      if (!is_antichain(elems)) return true;
      if (count == opt.cap) {
        out.truncated = true;
        return false;
      }
      Realization r;
      r.config.elements = std::move(elems);
      r.config.normalize();
      out.items.push_back(std::move(r));
      ++count;
      return true;
    });
  }
}

void realizable(const BaseSet& base, const ConfigOptions& opt, ConfigEnumeration& out) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> center(-1.0, 1.0);
  std::uniform_real_distribution<double> tight(0.3, 1.0);
  std::uniform_real_distribution<double> loose(1.0, 3.0);
  std::bernoulli_distribution coin(0.5);
  std::set<Configuration> seen;
  const int d = base.dim;
  for (int t = 0; t < opt.samples; ++t) {
    Vec z(d);
    for (int i = 0; i < d; ++i) z(i) = center(rng);
    std::vector<double> rho(static_cast<size_t>(base.signed_count()));
    for (int k = 0; k < base.size(); ++k) {
      double c = base.hyperplanes[static_cast<size_t>(k)].normal.dot(z);
      double lo = coin(rng) ? tight(rng) : loose(rng);
      double hi = coin(rng) ? tight(rng) : loose(rng);
      rho[static_cast<size_t>(2 * k)] = c - lo;
      rho[static_cast<size_t>(2 * k + 1)] = -(c + hi);
    }
    Realization r = configuration_of(base, rho);
    if (!seen.insert(r.config).second) continue;
    if (static_cast<long long>(out.items.size()) == opt.cap) {
      out.truncated = true;
      return;
    }
    out.items.push_back(std::move(r));
  }
}

}  // namespace

ConfigEnumeration enumerate_configurations(const BaseSet& base, const ConfigOptions& opt) {
  ConfigEnumeration out;
  if (opt.mode == ConfigMode::BruteForce) {
    brute_force(base, opt, out);
  } else {
    realizable(base, opt, out);
  }
  return out;
}

ArcGraph build_arc_graph(const BaseSet& base, const Configuration& c) {
  const int d = base.dim;
  const int k = c.size();
  for (const auto& e : c.elements) {
    if (!is_valid_element(base, e)) throw Error(ErrorKind::DegenerateConfiguration, "element without rank-d intersection");
  }
  ArcGraph g;
  g.nodes = k;
  g.out.resize(static_cast<size_t>(k));
  auto classify = [&](const Element& from, const Element& to, const Vec& e) -> std::optional<Vec> {
    Element diff;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(diff));
    if (diff.empty()) return std::nullopt;
    bool all_pos = true, all_neg = true;
    for (int s : diff) {
      double dot = base.signed_normal(s).dot(e);
      if (!(dot > 1e-9)) all_pos = false;
      if (!(dot < -1e-9)) all_neg = false;
    }
    if (all_pos) return e;
    if (all_neg) return Vec(-e);
    return std::nullopt;
  };
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto& v = c.elements[static_cast<size_t>(i)];
      const auto& w = c.elements[static_cast<size_t>(j)];
      Element common;
      std::set_intersection(v.begin(), v.end(), w.begin(), w.end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) < d - 1) continue;
      Mat N(static_cast<Eigen::Index>(common.size()), d);
      for (size_t r = 0; r < common.size(); ++r) N.row(static_cast<Eigen::Index>(r)) = base.signed_normal(common[r]).transpose();
      if (matrix_rank(N) != d - 1) continue;
      Eigen::JacobiSVD<Mat> svd(N, Eigen::ComputeFullV);
      Vec e = svd.matrixV().col(d - 1);
      if (auto dir = classify(v, w, e)) g.arcs.push_back(Arc{i, j, *dir});
      if (auto dir = classify(w, v, e)) g.arcs.push_back(Arc{j, i, *dir});
    }
  }
  for (size_t a = 0; a < g.arcs.size(); ++a) g.out[static_cast<size_t>(g.arcs[a].from)].push_back(static_cast<int>(a));
  for (auto& lst : g.out) {
    std::sort(lst.begin(), lst.end(), [&](int x, int y) { return g.arcs[static_cast<size_t>(x)].to < g.arcs[static_cast<size_t>(y)].to; });
  }
  return g;
}

namespace {

int token_walk(const ArcGraph& g, const Vec& n) {
  const double tol = 1e-9 * n.norm();
  std::vector<bool> seen(static_cast<size_t>(g.nodes), false);
  int node = 0;
  seen[0] = true;
  while (true) {
    int next = -1;
    for (int a : g.out[static_cast<size_t>(node)]) {
      const Arc& arc = g.arcs[static_cast<size_t>(a)];
      if (arc.dir.dot(n) > tol) {
        next = arc.to;
        break;
      }
    }
    if (next < 0) return node;
    if (seen[static_cast<size_t>(next)]) throw Error(ErrorKind::DegenerateConfiguration, "token walk revisited a node");
    seen[static_cast<size_t>(next)] = true;
    node = next;
  }
}

}  // namespace

std::pair<int, int> separated_pair(const ArcGraph& g, const Vec& n) {
  if (g.nodes == 0) throw Error(ErrorKind::DegenerateConfiguration, "empty configuration");
  return {token_walk(g, n), token_walk(g, -n)};
}

OrderEnumeration enumerate_orders(int k, long long cap, bool path_mode) {
  OrderEnumeration out;
  std::vector<int> base(static_cast<size_t>(std::max(k, 0)));
  std::iota(base.begin(), base.end(), 0);
  if ((!path_mode && k <= 3) || (path_mode && k <= 2)) {
    out.orders.push_back(base);
    return out;
  }
  auto accept = [&](const std::vector<int>& p) {
    if (path_mode) return p.front() < p.back();
    return p[1] < p.back();
  };
  std::vector<int> perm = base;
  auto first = path_mode ? perm.begin() : perm.begin() + 1;
  do {
    if (!accept(perm)) continue;
    if (static_cast<long long>(out.orders.size()) == cap) {
      out.truncated = true;
      break;
    }
    out.orders.push_back(perm);
  } while (std::next_permutation(first, perm.end()));
  return out;
}

std::vector<int> canonical_order(std::vector<int> order, bool path_mode) {
  if (order.size() <= 1) return order;
  if (path_mode) {
    if (order.front() > order.back()) std::reverse(order.begin(), order.end());
    return order;
  }
  auto it = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), it, order.end());
  if (order.size() >= 3 && order[1] > order.back()) std::reverse(order.begin() + 1, order.end());
  return order;
}

std::pair<double, double> ratio_band(const EdgeGuess& g, int l, double delta) {
  if (l == g.lmax) return {1.0, 1.0};
  if (g.small[static_cast<size_t>(l)]) return {0.0, delta};
  double r = g.ratio[static_cast<size_t>(l)];
  return {r / (1 + delta), r * (1 + delta)};
}

std::vector<EdgeGuess> edge_guess_choices(double delta, int d) {
  const auto grid = ratio_grid(delta);
  const int per = 2 * static_cast<int>(grid.size());
  std::vector<EdgeGuess> out;
  for (int lmax = 0; lmax < d; ++lmax) {
    for (int sgn : {1, -1}) {
      std::vector<int> digit(static_cast<size_t>(d - 1), 0);
      while (true) {
        EdgeGuess g;
        g.lmax = lmax;
        g.sgn_max = sgn;
        g.ratio.assign(static_cast<size_t>(d), 1.0);
        g.sign.assign(static_cast<size_t>(d), sgn);
        g.small.assign(static_cast<size_t>(d), false);
        for (int l = 0, k = 0; l < d; ++l) {
          if (l == lmax) continue;
          int ch = digit[static_cast<size_t>(k++)];
          int gi = ch / 2;
          g.ratio[static_cast<size_t>(l)] = grid[static_cast<size_t>(gi)];
          g.small[static_cast<size_t>(l)] = gi == 0;
          g.sign[static_cast<size_t>(l)] = ch % 2 == 0 ? 1 : -1;
        }
        out.push_back(std::move(g));
        int pos = d - 2;
        while (pos >= 0 && ++digit[static_cast<size_t>(pos)] == per) digit[static_cast<size_t>(pos--)] = 0;
        if (pos < 0) break;
      }
    }
  }
  return out;
}

double direction_guess_count(double delta, int d, int edges) {
  double per = d * 2.0 * std::pow(2.0 * static_cast<double>(ratio_grid(delta).size()), d - 1);
  return std::pow(per, edges);
}

bool enumerate_direction_guesses(double delta, int d, int edges, long long cap,
                                 const std::function<bool(const DirectionGuess&)>& fn) {
  const auto choices = edge_guess_choices(delta, d);
  const int per = static_cast<int>(choices.size());
  std::vector<int> digit(static_cast<size_t>(edges), 0);
  DirectionGuess guess(static_cast<size_t>(edges), choices.front());
  long long count = 0;
  while (true) {
    if (count == cap) return true;
    for (int e = 0; e < edges; ++e) guess[static_cast<size_t>(e)] = choices[static_cast<size_t>(digit[static_cast<size_t>(e)])];
    ++count;
    if (!fn(guess)) return false;
    int pos = edges - 1;
    while (pos >= 0 && ++digit[static_cast<size_t>(pos)] == per) digit[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) return false;
  }
}

EdgeGuess covering_guess(const Vec& v, double delta) {
  const int d = static_cast<int>(v.size());
  const auto grid = ratio_grid(delta);
  EdgeGuess g;
  g.lmax = 0;
  for (int l = 1; l < d; ++l) {
    if (std::abs(v(l)) > std::abs(v(g.lmax))) g.lmax = l;
  }
  const double top = std::abs(v(g.lmax));
  g.sgn_max = v(g.lmax) < 0 ? -1 : 1;
  g.ratio.assign(static_cast<size_t>(d), 1.0);
  g.sign.assign(static_cast<size_t>(d), g.sgn_max);
  g.small.assign(static_cast<size_t>(d), false);
  for (int l = 0; l < d; ++l) {
    if (l == g.lmax) continue;
    g.sign[static_cast<size_t>(l)] = v(l) < 0 ? -1 : 1;
    double t = top > 0 ? std::abs(v(l)) / top : 0.0;
    if (t < delta) {
      g.small[static_cast<size_t>(l)] = true;
      g.ratio[static_cast<size_t>(l)] = grid[0];
      continue;
    }
    size_t best = 1;
    for (size_t i = 2; i < grid.size(); ++i) {
      if (std::abs(std::log(t / grid[i])) < std::abs(std::log(t / grid[best]))) best = i;
    }
    g.ratio[static_cast<size_t>(l)] = grid[best];
  }
  return g;
}

bool satisfies_bands(const Vec& v, const EdgeGuess& g, double delta, double tol) {
  const double t = tol * std::max(1.0, v.cwiseAbs().maxCoeff());
  const double lead = g.sgn_max * v(g.lmax);
  if (lead < -t) return false;
  for (int l = 0; l < static_cast<int>(v.size()); ++l) {
    if (l == g.lmax) continue;
    double x = g.sign[static_cast<size_t>(l)] * v(l);
    auto [lo, hi] = ratio_band(g, l, delta);
    if (x < -t || x > hi * lead + t || x < lo * lead - t) return false;
  }
  return true;
}

}  // namespace tspn
