#include "tspn/lp_model.hpp"

#include "tspn/errors.hpp"

#include <cmath>

namespace tspn {

SeparatedPairs compute_separated_pairs(const ArcGraph& g, const std::vector<Hyperplane>& inst) {
  SeparatedPairs p;
  for (const auto& h : inst) {
    auto [plus, minus] = separated_pair(g, h.normal);
    p.plus.push_back(plus);
    p.minus.push_back(minus);
  }
  return p;
}

int edge_count(int k, bool path_mode) {
  if (path_mode) return std::max(k - 1, 0);
  return k;
}

std::vector<Vec> tour_edges(const std::vector<Vec>& pts, const std::vector<int>& order, bool path_mode) {
  const int k = static_cast<int>(order.size());
  std::vector<Vec> edges;
  for (int e = 0; e < edge_count(k, path_mode); ++e) {
    const Vec& a = pts[static_cast<size_t>(order[static_cast<size_t>(e)])];
    const Vec& b = pts[static_cast<size_t>(order[static_cast<size_t>((e + 1) % k)])];
    edges.push_back(b - a);
  }
  return edges;
}

LpModel build_lp(const Configuration& c, const SeparatedPairs& pairs, const std::vector<int>& order,
                 const DirectionGuess& guess, double delta, const BaseSet& base,
                 const std::vector<Hyperplane>& inst, bool path_mode) {
  const int d = base.dim;
  const int k = c.size();
  const int edges = edge_count(k, path_mode);
  if (static_cast<int>(guess.size()) != edges) throw Error(ErrorKind::GuessMismatch, "guess length differs from edge count");
  if (static_cast<int>(order.size()) != k) throw Error(ErrorKind::InternalAssertion, "order length differs from configuration");

  LpModel m;
  m.dim = d;
  m.num_rho = base.signed_count();
  m.num_elements = k;
  m.order = order;
  m.path_mode = path_mode;
  m.problem = lp::Problem(m.num_rho + d * k);
  auto& P = m.problem;

  // <x_c, n_s> - rho_s = 0 for every s in c.
  for (int e = 0; e < k; ++e) {
    for (int s : c.elements[static_cast<size_t>(e)]) {
      auto& row = P.add_row(lp::Sense::Equal, 0.0);
      Vec n = base.signed_normal(s);
      for (int j = 0; j < d; ++j) row.coeffs[static_cast<size_t>(m.x_index(e, j))] = n(j);
      row.coeffs[static_cast<size_t>(s)] = -1.0;
      ++m.incidence_rows;
    }
  }

  // <x_{c+} - gamma, n> >= 0 and <x_{c-} - gamma, n> <= 0, gamma the foot of
  // the perpendicular from the origin, so <gamma, n> is the unit offset.
  for (size_t i = 0; i < inst.size(); ++i) {
    const auto& h = inst[i];
    auto& up = P.add_row(lp::Sense::GreaterEqual, h.offset);
    for (int j = 0; j < d; ++j) up.coeffs[static_cast<size_t>(m.x_index(pairs.plus[i], j))] = h.normal(j);
    auto& down = P.add_row(lp::Sense::LessEqual, h.offset);
    for (int j = 0; j < d; ++j) down.coeffs[static_cast<size_t>(m.x_index(pairs.minus[i], j))] = h.normal(j);
    m.separation_rows += 2;
  }

  // Edge e runs from x_{order[e]} to x_{order[e+1]}; coefficient of x_to is +1.
  for (int e = 0; e < edges; ++e) {
    const EdgeGuess& g = guess[static_cast<size_t>(e)];
    const int from = order[static_cast<size_t>(e)];
    const int to = order[static_cast<size_t>((e + 1) % k)];
    auto set_edge = [&](lp::Row& row, int coord, double w) {
      if (from == to) return;
      row.coeffs[static_cast<size_t>(m.x_index(to, coord))] += w;
      row.coeffs[static_cast<size_t>(m.x_index(from, coord))] -= w;
    };
    const int L = g.lmax;
    const double sm = g.sgn_max;
    {
      auto& row = P.add_row(lp::Sense::GreaterEqual, 0.0);
      set_edge(row, L, sm);
      ++m.angle_rows;
    }
    double weight = 1.0;
    for (int l = 0; l < d; ++l) {
      if (l == L) continue;
      const double sl = g.sign[static_cast<size_t>(l)];
      auto [lo, hi] = ratio_band(g, l, delta);
      weight += g.ratio[static_cast<size_t>(l)] * g.ratio[static_cast<size_t>(l)];
      auto& sign_row = P.add_row(lp::Sense::GreaterEqual, 0.0);
      set_edge(sign_row, l, sl);
      auto& upper = P.add_row(lp::Sense::GreaterEqual, 0.0);
      set_edge(upper, L, hi * sm);
      set_edge(upper, l, -sl);
      m.angle_rows += 2;
      if (lo > 0.0) {
        auto& lower = P.add_row(lp::Sense::GreaterEqual, 0.0);
        set_edge(lower, l, sl);
        set_edge(lower, L, -lo * sm);
        ++m.angle_rows;
      }
    }
    const double len = std::sqrt(weight);
    if (from != to) {
      P.objective[static_cast<size_t>(m.x_index(to, L))] += sm * len;
      P.objective[static_cast<size_t>(m.x_index(from, L))] -= sm * len;
    }
  }
  return m;
}

LpSolution solve_lp(const LpModel& m) {
  auto res = lp::solve(m.problem);
  LpSolution s;
  s.status = res.status;
  s.values = std::move(res.x);
  s.objective = res.objective;
  return s;
}

std::vector<Vec> element_points(const LpModel& m, const LpSolution& sol) {
  std::vector<Vec> pts;
  for (int e = 0; e < m.num_elements; ++e) {
    Vec x(m.dim);
    for (int j = 0; j < m.dim; ++j) x(j) = sol.values[static_cast<size_t>(m.x_index(e, j))];
    pts.push_back(std::move(x));
  }
  return pts;
}

Tour extract_tour(const LpModel& m, const LpSolution& sol) {
  auto pts = element_points(m, sol);
  Tour t;
  t.closed = !m.path_mode;
  for (int e : m.order) t.waypoints.push_back(pts[static_cast<size_t>(e)]);
  return t;
}

double approx_length(const Vec& v, const EdgeGuess& g, double delta) {
  if (!satisfies_bands(v, g, delta, 1e-9)) throw Error(ErrorKind::GuessMismatch, "vector outside the guessed ratio bands");
  double w = 0.0;
  for (size_t l = 0; l < g.ratio.size(); ++l) w += static_cast<int>(l) == g.lmax ? 1.0 : g.ratio[l] * g.ratio[l];
  return std::abs(v(g.lmax)) * std::sqrt(w);
}

}  // namespace tspn
