#include "tspn/geometry.hpp"

#include "tspn/combinatorics.hpp"
#include "tspn/errors.hpp"
#include "tspn/hull.hpp"
#include "tspn/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace tspn {

Hyperplane Hyperplane::make(const Vec& a, double c) {
  double norm = a.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorKind::ZeroNormal, "hyperplane normal is zero");
  Hyperplane h;
  h.normal = a / norm;
  h.offset = c / norm;
  for (Eigen::Index i = 0; i < h.normal.size(); ++i) {
    if (std::abs(h.normal(i)) > kTau) {
      if (h.normal(i) < 0) {
        h.normal = -h.normal;
        h.offset = -h.offset;
      }
      break;
    }
  }
  return h;
}

bool Hyperplane::contains(const Vec& x, double tol) const { return std::abs(eval(x)) <= tol; }

bool Hyperplane::same_as(const Hyperplane& other, double tol) const {
  return (normal - other.normal).cwiseAbs().maxCoeff() <= tol && std::abs(offset - other.offset) <= tol;
}

PolytopeH PolytopeH::make(std::vector<HalfSpace> hs) {
  if (hs.empty()) throw Error(ErrorKind::UnboundedPolytope, "no half-spaces");
  PolytopeH p;
  p.dim = static_cast<int>(hs.front().normal.size());
  p.halfspaces = std::move(hs);
  for (int i = 0; i < p.dim; ++i) {
    for (double sign : {1.0, -1.0}) {
      lp::Problem prob(p.dim);
      prob.objective[static_cast<size_t>(i)] = -sign;
      for (const auto& h : p.halfspaces) {
        auto& row = prob.add_row(lp::Sense::GreaterEqual, h.offset);
        for (int j = 0; j < p.dim; ++j) row.coeffs[static_cast<size_t>(j)] = h.normal(j);
      }
      auto res = lp::solve(prob);
      if (res.status == lp::Status::Infeasible) throw Error(ErrorKind::EmptyPolytope, "half-spaces have empty intersection");
      if (res.status == lp::Status::Unbounded) throw Error(ErrorKind::UnboundedPolytope, "intersection is unbounded");
      if (res.status != lp::Status::Optimal) throw Error(ErrorKind::NumericalFailure, "boundedness LP failed");
    }
  }
  return p;
}

bool PolytopeH::contains(const Vec& x, double tol) const {
  return std::all_of(halfspaces.begin(), halfspaces.end(), [&](const HalfSpace& h) { return h.contains(x, tol); });
}

PolytopeV PolytopeV::from_points(const std::vector<Vec>& pts, double tol) {
  if (pts.empty()) throw Error(ErrorKind::EmptyPolytope, "no points");
  std::vector<Vec> uniq = dedup_points(pts, 10 * tol);
  PolytopeV p;
  for (int i : extreme_points(uniq, tol)) p.vertices.push_back(uniq[static_cast<size_t>(i)]);
  return p;
}

std::vector<int> FeasibilityReport::unvisited() const {
  std::vector<int> out;
  for (size_t i = 0; i < visited.size(); ++i) {
    if (!visited[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Vec> dedup_points(const std::vector<Vec>& pts, double radius) {
  std::vector<Vec> sums;
  std::vector<Vec> reps;
  std::vector<int> counts;
  for (const auto& p : pts) {
    bool merged = false;
    for (size_t k = 0; k < reps.size(); ++k) {
      if ((reps[k] - p).norm() <= radius) {
        sums[k] += p;
        ++counts[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      reps.push_back(p);
      sums.push_back(p);
      counts.push_back(1);
    }
  }
  std::vector<Vec> out;
  out.reserve(reps.size());
  for (size_t k = 0; k < reps.size(); ++k) out.push_back(sums[k] / counts[k]);
  return out;
}

PolytopeV vertex_enumerate(const PolytopeH& p, double tol) {
  const int d = p.dim;
  const int m = static_cast<int>(p.halfspaces.size());
  std::vector<Vec> found;
  Mat A(d, d);
  Vec b(d);
  for_each_combination(m, d, [&](const std::vector<int>& idx) {
    for (int r = 0; r < d; ++r) {
      const auto& h = p.halfspaces[static_cast<size_t>(idx[static_cast<size_t>(r)])];
      A.row(r) = h.normal.transpose();
      b(r) = h.offset;
    }
    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) return true;
    Vec x = lu.solve(b);
    double scale = 1.0 + x.cwiseAbs().maxCoeff();
    if (p.contains(x, tol * scale)) found.push_back(std::move(x));
    return true;
  });
  if (found.empty()) throw Error(ErrorKind::EmptyPolytope, "no vertices found");
  PolytopeV out;
  out.vertices = dedup_points(found, 10 * tol);
  return out;
}

bool polytope_intersects_hyperplane(const PolytopeV& p, const Hyperplane& h, double tol) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : p.vertices) {
    double s = h.normal.dot(v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return lo <= h.offset + tol && h.offset - tol <= hi;
}

FeasibilityReport tour_feasible(const Tour& t, const std::vector<Hyperplane>& inst, double tol) {
  FeasibilityReport rep;
  rep.visited.assign(inst.size(), false);
  rep.witnesses.assign(inst.size(), std::nullopt);
  const auto& w = t.waypoints;
  const size_t n = w.size();
  for (size_t i = 0; i < inst.size(); ++i) {
    const auto& h = inst[i];
    for (size_t k = 0; k < n && !rep.visited[i]; ++k) {
      double sa = h.eval(w[k]);
      if (std::abs(sa) <= tol) {
        rep.visited[i] = true;
        rep.witnesses[i] = w[k];
        break;
      }
      bool has_next = k + 1 < n || (t.closed && n > 1);
      if (!has_next) continue;
      const Vec& q = w[(k + 1) % n];
      double sb = h.eval(q);
      if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) {
        double lambda = sa / (sa - sb);
        rep.visited[i] = true;
        rep.witnesses[i] = w[k] + lambda * (q - w[k]);
      }
    }
    if (!rep.visited[i]) rep.feasible = false;
  }
  return rep;
}

double tour_length(const Tour& t) {
  const auto& w = t.waypoints;
  double len = 0.0;
  for (size_t k = 0; k + 1 < w.size(); ++k) len += (w[k + 1] - w[k]).norm();
  if (t.closed && w.size() > 1) len += (w.front() - w.back()).norm();
  return len;
}

std::vector<Vec> scale_points(const std::vector<Vec>& ps, const Vec& center, double factor) {
  std::vector<Vec> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(center + factor * (p - center));
  return out;
}

Tour shortcut_tour(const Tour& t, const std::vector<int>& keep) {
  if (keep.empty()) throw Error(ErrorKind::EmptyKeepSet, "shortcut keeps no waypoint");
  std::vector<int> idx = keep;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Tour out;
  out.closed = t.closed;
  for (int i : idx) out.waypoints.push_back(t.waypoints.at(static_cast<size_t>(i)));
  return out;
}

int matrix_rank(const Mat& rows, double tol) {
  if (rows.rows() == 0 || rows.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(rows);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * std::max(1.0, s(0))) ++r;
  }
  return r;
}

bool lex_less(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t k = 0; k < n; ++k) {
    Eigen::Index m = std::min(a[k].size(), b[k].size());
    for (Eigen::Index i = 0; i < m; ++i) {
      if (a[k](i) < b[k](i)) return true;
      if (a[k](i) > b[k](i)) return false;
    }
  }
  return a.size() < b.size();
}

}  // namespace tspn
