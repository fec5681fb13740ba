#include "tspn/sparsify.hpp"

#include "tspn/base_set.hpp"
#include "tspn/errors.hpp"
#include "tspn/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tspn {

RaySet ray_set(double eps, int d) {
  const double bound = std::atan(eps / std::sqrt(static_cast<double>(d) * d - 1.0)) / std::sqrt(static_cast<double>(d));
  RaySet rs;
  rs.m = static_cast<int>(std::ceil(2.0 * std::numbers::pi / bound - 1e-9));
  rs.theta = 2.0 * std::numbers::pi / rs.m;
  for (int i = 0; i < rs.m; ++i) rs.angles.push_back(i * rs.theta);
  rs.ray_count = 1;
  for (int i = 0; i < d - 1; ++i) rs.ray_count *= rs.m;
  return rs;
}

std::vector<Vec> ray_directions(const RaySet& rs, int d) {
  std::vector<Vec> raw;
  std::vector<int> digit(static_cast<size_t>(d - 1), 0);
  while (true) {
    Vec x(d);
    double sprod = 1.0;
    for (int i = 0; i < d - 1; ++i) {
      double phi = rs.angles[static_cast<size_t>(digit[static_cast<size_t>(i)])];
      x(i) = sprod * std::cos(phi);
      sprod *= std::sin(phi);
    }
    x(d - 1) = sprod;
    raw.push_back(x / x.norm());
    int pos = d - 2;
    while (pos >= 0 && ++digit[static_cast<size_t>(pos)] == rs.m) digit[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  // Exact-ish duplicates only; keeps first occurrence.
  std::vector<Vec> out;
  for (const auto& v : raw) {
    bool dup = false;
    for (const auto& u : out) {
      if ((u - v).norm() < 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(v);
  }
  return out;
}

PolytopeH hrep_of(const PolytopeV& p) {
  auto facets = hull_facets(p.vertices);
  if (facets.empty()) throw Error(ErrorKind::DegenerateBody, "vertex set is not full-dimensional");
  PolytopeH h;
  h.dim = p.dim();
  for (const auto& f : facets) h.halfspaces.push_back(HalfSpace{-f.normal, -f.offset});
  return h;
}

double containment_margin(const std::vector<Vec>& hull, const std::vector<Vec>& points) {
  auto facets = hull_facets(hull);
  double margin = INFINITY;
  for (const auto& f : facets) {
    for (const auto& p : points) margin = std::min(margin, f.offset - f.normal.dot(p));
  }
  return margin;
}

namespace {

// Point where the ray from the origin leaves the polytope, by bisection on
// the facet-membership predicate.
Vec ray_exit(const std::vector<Facet>& facets, const Vec& dir, double tmax) {
  auto inside = [&](double t) {
    Vec x = t * dir;
    for (const auto& f : facets) {
      if (f.normal.dot(x) > f.offset) return false;
    }
    return true;
  };
  double lo = 0.0, hi = tmax;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (inside(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo * dir;
}

}  // namespace

SparsifyReport select_sparse_vertices(const PolytopeV& p_norm, double eps) {
  const int d = p_norm.dim();
  const auto& V = p_norm.vertices;
  auto facets = hull_facets(V);
  if (facets.empty()) throw Error(ErrorKind::DegenerateBody, "vertex set is not full-dimensional");
  RaySet rs = ray_set(eps, d);
  auto dirs = ray_directions(rs, d);
  SparsifyReport rep;
  rep.center = Vec::Zero(d);
  rep.rays = static_cast<int>(dirs.size());
  rep.bound = d * rs.ray_count;
  std::vector<bool> chosen(V.size(), false);
  for (const auto& dir : dirs) {
    Vec q = ray_exit(facets, dir, 2.0 * d);
    ++rep.surface_points;
    size_t best = 0;
    double best_gap = INFINITY;
    for (size_t f = 0; f < facets.size(); ++f) {
      double gap = std::abs(facets[f].offset - facets[f].normal.dot(q));
      if (gap < best_gap) {
        best_gap = gap;
        best = f;
      }
    }
    const auto& on = facets[best].points;
    std::vector<Vec> fv;
    for (int i : on) fv.push_back(V[static_cast<size_t>(i)]);
    // q sits within ~1e-15 of the facet; project it before decomposing.
    Vec qf = q + (facets[best].offset - facets[best].normal.dot(q)) * facets[best].normal;
    auto w = convex_combination(fv, qf, 1e-7);
    if (!w) throw Error(ErrorKind::ContainmentViolation, "surface point not on its facet");
    auto [idx, wts] = caratheodory_reduce(fv, *w);
    for (int i : idx) chosen[static_cast<size_t>(on[static_cast<size_t>(i)])] = true;
  }
  for (size_t i = 0; i < V.size(); ++i) {
    if (chosen[i]) {
      rep.selected.push_back(static_cast<int>(i));
      rep.selected_points.push_back(V[i]);
    }
  }
  auto grown = scale_points(rep.selected_points, rep.center, 1.0 + eps);
  rep.expanded.vertices = grown;
  for (const auto& v : V) {
    if (!in_hull(grown, v, 1e-7)) throw Error(ErrorKind::ContainmentViolation, "polytope not inside the expanded hull");
  }
  rep.containment_margin = containment_margin(grown, V);
  rep.expanded = PolytopeV::from_points(grown);
  return rep;
}

SparsifyReport sparsify_polytope(const PolytopeV& p, double eps) {
  PolytopeH h = hrep_of(p);
  Ellipsoid e = max_inscribed_ellipsoid(h);
  Mat Binv = e.shape.inverse();
  PolytopeV norm;
  for (const auto& v : p.vertices) norm.vertices.push_back(Binv * (v - e.center));
  double outer = 0.0;
  for (const auto& v : norm.vertices) outer = std::max(outer, v.norm());
  if (outer > p.dim() * (1.0 + 1e-4)) throw Error(ErrorKind::ContainmentViolation, "normalized polytope leaves B(0, d)");
  SparsifyReport rep = select_sparse_vertices(norm, eps);
  rep.center = e.center;
  rep.selected_points.clear();
  for (int i : rep.selected) rep.selected_points.push_back(p.vertices[static_cast<size_t>(i)]);
  auto grown = scale_points(rep.selected_points, rep.center, 1.0 + eps);
  for (const auto& v : p.vertices) {
    if (!in_hull(grown, v, 1e-7)) throw Error(ErrorKind::ContainmentViolation, "polytope not inside the expanded hull");
  }
  // Facet slack is scale dependent; report it relative to the body size.
  double diam = 0.0;
  for (const auto& v : p.vertices) diam = std::max(diam, (v - e.center).norm());
  rep.containment_margin = containment_margin(grown, p.vertices) / std::max(1.0, diam);
  rep.expanded = PolytopeV::from_points(grown);
  return rep;
}

GridSpec snap_grid(const PolytopeV& p, double eps_prime) {
  const int d = p.dim();
  Vec lo = p.vertices.front(), hi = p.vertices.front();
  for (const auto& v : p.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  GridSpec gs;
  gs.anchor = lo;
  gs.side = (hi - lo).maxCoeff();
  double k = std::max(k_eps_d(eps_prime, d), static_cast<double>(p.vertices.size()));
  gs.g = gs.side * eps_prime / (k * std::sqrt(static_cast<double>(d)) * (std::pow(2.0, d) + 1.0));
  return gs;
}

std::vector<Vec> cell_corners(const Vec& v, const Vec& anchor, double g) {
  const int d = static_cast<int>(v.size());
  Vec base(d);
  for (int i = 0; i < d; ++i) base(i) = anchor(i) + std::floor((v(i) - anchor(i)) / g) * g;
  std::vector<Vec> out;
  for (int k = 0; k < (1 << d); ++k) {
    int code = k ^ (k >> 1);
    Vec c = base;
    for (int i = 0; i < d; ++i) {
      if (code >> i & 1) c(i) += g;
    }
    out.push_back(c);
  }
  return out;
}

PolytopeV snap_to_grid(const PolytopeV& p, const Vec& anchor, double g) {
  if (!(g > 0)) return p;
  std::vector<Vec> pts;
  for (const auto& v : p.vertices) {
    auto cs = cell_corners(v, anchor, g);
    pts.insert(pts.end(), cs.begin(), cs.end());
  }
  return PolytopeV::from_points(pts);
}

PolytopeV snap_to_grid(const PolytopeV& p, double eps_prime) {
  GridSpec gs = snap_grid(p, eps_prime);
  return snap_to_grid(p, gs.anchor, gs.g);
}

Tour looped_tour(const Tour& t, const Vec& anchor, double g) {
  Tour out;
  out.closed = t.closed;
  for (const auto& v : t.waypoints) {
    out.waypoints.push_back(v);
    for (auto& c : cell_corners(v, anchor, g)) out.waypoints.push_back(std::move(c));
    out.waypoints.push_back(v);
  }
  return out;
}

PolytopeV random_polytope(int d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> stretch(0.3, 3.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  Mat A = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) A(i, i) = stretch(rng);
  // Random rotation from the QR of a Gaussian matrix.
  Mat G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = gauss(rng);
  Mat Q = Eigen::HouseholderQR<Mat>(G).householderQ();
  Vec c(d);
  for (int i = 0; i < d; ++i) c(i) = shift(rng);
  std::vector<Vec> pts;
  for (int k = 0; k < count; ++k) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = gauss(rng);
    u /= u.norm();
    pts.push_back(c + Q * A * u);
  }
  return PolytopeV::from_points(pts);
}

}  // namespace tspn
