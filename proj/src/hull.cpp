#include "tspn/hull.hpp"

#include "tspn/combinatorics.hpp"
#include "tspn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tspn {

namespace {

// Generalized cross product of the d-1 rows of M (a (d-1) x d matrix).
Vec cofactor_normal(const Mat& M) {
  const int d = static_cast<int>(M.cols());
  Vec n(d);
  Mat minor(d - 1, d - 1);
  for (int i = 0; i < d; ++i) {
    for (int c = 0, cc = 0; c < d; ++c) {
      if (c == i) continue;
      minor.col(cc++) = M.col(c);
    }
    double det = d == 2 ? minor(0, 0) : minor.determinant();
    n(i) = (i % 2 == 0 ? 1.0 : -1.0) * det;
  }
  return n;
}

double spread(const std::vector<Vec>& pts) {
  if (pts.empty()) return 1.0;
  Vec lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return std::max(1.0, (hi - lo).norm());
}

}  // namespace

int affine_rank(const std::vector<Vec>& pts, double tol) {
  if (pts.size() <= 1) return 0;
  const int d = static_cast<int>(pts.front().size());
  Mat M(static_cast<Eigen::Index>(pts.size() - 1), d);
  for (size_t i = 1; i < pts.size(); ++i) M.row(static_cast<Eigen::Index>(i - 1)) = (pts[i] - pts[0]).transpose();
  return matrix_rank(M, tol);
}

namespace {

std::vector<Facet> hull_facets_brute(const std::vector<Vec>& pts, double tol);

// Points strictly inside the hull of a few direction-extreme points cannot
// lie on a facet, so they are dropped before the brute-force pass.
constexpr int kPruneAbove = 24;

std::vector<int> prune_interior(const std::vector<Vec>& pts, double tol) {
  const int d = static_cast<int>(pts.front().size());
  const int n = static_cast<int>(pts.size());
  std::vector<Vec> dirs;
  std::vector<int> digit(static_cast<size_t>(d), -1);
  while (true) {  // all of {-1, 0, 1}^d except 0
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = digit[static_cast<size_t>(i)];
    if (v.squaredNorm() > 0) dirs.push_back(v);
    int i = 0;
    while (i < d && digit[static_cast<size_t>(i)] == 1) digit[static_cast<size_t>(i++)] = -1;
    if (i == d) break;
    ++digit[static_cast<size_t>(i)];
  }
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < 64; ++k) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = gauss(rng);
    dirs.push_back(v);
  }
  std::vector<bool> in_core(static_cast<size_t>(n), false);
  for (const auto& v : dirs) {
    int best = 0;
    for (int i = 1; i < n; ++i) {
      if (v.dot(pts[static_cast<size_t>(i)]) > v.dot(pts[static_cast<size_t>(best)])) best = i;
    }
    in_core[static_cast<size_t>(best)] = true;
  }
  std::vector<Vec> core;
  for (int i = 0; i < n; ++i) {
    if (in_core[static_cast<size_t>(i)]) core.push_back(pts[static_cast<size_t>(i)]);
  }
  std::vector<int> keep;
  auto core_facets = hull_facets_brute(core, tol);
  if (core_facets.empty()) {
    for (int i = 0; i < n; ++i) keep.push_back(i);
    return keep;
  }
  const double margin = 10.0 * tol * spread(pts);
  for (int i = 0; i < n; ++i) {
    double worst = -INFINITY;
    for (const auto& f : core_facets) worst = std::max(worst, f.normal.dot(pts[static_cast<size_t>(i)]) - f.offset);
    if (in_core[static_cast<size_t>(i)] || worst >= -margin) keep.push_back(i);
  }
  return keep;
}

}  // namespace

std::vector<Facet> hull_facets(const std::vector<Vec>& pts, double tol) {
  if (static_cast<int>(pts.size()) <= kPruneAbove) return hull_facets_brute(pts, tol);
  const int d = static_cast<int>(pts.front().size());
  if (affine_rank(pts) < d) return {};
  auto keep = prune_interior(pts, tol);
  std::vector<Vec> sub;
  for (int i : keep) sub.push_back(pts[static_cast<size_t>(i)]);
  auto facets = hull_facets_brute(sub, tol);
  // Re-list facet points against the full input.
  const double eps = tol * spread(sub);
  for (auto& f : facets) {
    f.points.clear();
    for (size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(f.normal.dot(pts[i]) - f.offset) <= eps) f.points.push_back(static_cast<int>(i));
    }
  }
  return facets;
}

namespace {

std::vector<Facet> hull_facets_brute(const std::vector<Vec>& pts, double tol) {
  std::vector<Facet> facets;
  if (pts.empty()) return facets;
  const int d = static_cast<int>(pts.front().size());
  const int n = static_cast<int>(pts.size());
  if (n < d + 1 || affine_rank(pts) < d) return facets;
  const double eps = tol * spread(pts);
  Mat M(d - 1, d);
  std::vector<double> s(static_cast<size_t>(n));
  for_each_combination(n, d, [&](const std::vector<int>& idx) {
    const Vec& p0 = pts[static_cast<size_t>(idx[0])];
    double scale = 1.0;
    for (int r = 1; r < d; ++r) {
      M.row(r - 1) = (pts[static_cast<size_t>(idx[static_cast<size_t>(r)])] - p0).transpose();
      scale *= std::max(M.row(r - 1).norm(), 1e-300);
    }
    Vec normal = cofactor_normal(M);
    double len = normal.norm();
    if (len <= 1e-10 * scale) return true;
    normal /= len;
    double off = normal.dot(p0);
    // Skip subsets whose plane is already a known facet.
    for (const auto& f : facets) {
      if ((f.normal - normal).norm() < 1e-9 && std::abs(f.offset - off) <= eps) return true;
      if ((f.normal + normal).norm() < 1e-9 && std::abs(f.offset + off) <= eps) return true;
    }
    bool any_pos = false, any_neg = false;
    for (int i = 0; i < n; ++i) {
      s[static_cast<size_t>(i)] = normal.dot(pts[static_cast<size_t>(i)]) - off;
      if (s[static_cast<size_t>(i)] > eps) any_pos = true;
      if (s[static_cast<size_t>(i)] < -eps) any_neg = true;
      if (any_pos && any_neg) return true;
    }
    if (any_pos) {
      normal = -normal;
      off = -off;
    }
    Facet f;
    f.normal = normal;
    f.offset = off;
    for (int i = 0; i < n; ++i) {
      if (std::abs(s[static_cast<size_t>(i)]) <= eps) f.points.push_back(i);
    }
    facets.push_back(std::move(f));
    return true;
  });
  return facets;
}

}  // namespace

std::optional<std::vector<double>> convex_combination(const std::vector<Vec>& pts, const Vec& x, double tol) {
  const int n = static_cast<int>(pts.size());
  if (n == 0) return std::nullopt;
  const int d = static_cast<int>(x.size());
  // Least L1 residual: sum lambda_i (p_i - x) + s+ - s- = 0, sum lambda = 1.
  // Always feasible, so boundary points cannot be lost to an infeasibility
  // verdict driven by rounding; x is in the hull iff the residual is ~0.
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, (p - x).cwiseAbs().maxCoeff());
  if (scale == 0.0) scale = 1.0;
  const int nv = n + 2 * d;
  lp::Problem prob(nv);
  auto& sum = prob.add_row(lp::Sense::Equal, 1.0);
  for (int i = 0; i < n; ++i) sum.coeffs[static_cast<size_t>(i)] = 1.0;
  for (int j = 0; j < d; ++j) {
    auto& row = prob.add_row(lp::Sense::Equal, 0.0);
    for (int i = 0; i < n; ++i) row.coeffs[static_cast<size_t>(i)] = (pts[static_cast<size_t>(i)](j) - x(j)) / scale;
    row.coeffs[static_cast<size_t>(n + 2 * j)] = 1.0;
    row.coeffs[static_cast<size_t>(n + 2 * j + 1)] = -1.0;
    prob.objective[static_cast<size_t>(n + 2 * j)] = 1.0;
    prob.objective[static_cast<size_t>(n + 2 * j + 1)] = 1.0;
  }
  for (int i = 0; i < nv; ++i) prob.add_row(lp::Sense::GreaterEqual, 0.0).coeffs[static_cast<size_t>(i)] = 1.0;
  auto res = lp::solve(prob);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  std::vector<double> w(res.x.begin(), res.x.begin() + n);
  double total = 0.0;
  for (auto& v : w) {
    v = std::max(0.0, v);
    total += v;
  }
  if (total <= 0.0) return std::nullopt;
  for (auto& v : w) v /= total;
  Vec y = Vec::Zero(d);
  for (int i = 0; i < n; ++i) y += w[static_cast<size_t>(i)] * pts[static_cast<size_t>(i)];
  if ((y - x).cwiseAbs().maxCoeff() > tol * std::max(1.0, x.cwiseAbs().maxCoeff())) return std::nullopt;
  return w;
}

bool in_hull(const std::vector<Vec>& pts, const Vec& x, double tol) { return convex_combination(pts, x, tol).has_value(); }

std::vector<int> extreme_points(const std::vector<Vec>& pts, double tol) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> out;
  if (n == 0) return out;
  const int d = static_cast<int>(pts.front().size());
  // Exact duplicates keep their first occurrence only.
  std::vector<bool> dup(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i && !dup[static_cast<size_t>(i)]; ++j) {
      if (!dup[static_cast<size_t>(j)] && (pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(j)]).norm() <= 10 * tol) dup[static_cast<size_t>(i)] = true;
    }
  }
  std::vector<int> uniq;
  std::vector<Vec> upts;
  for (int i = 0; i < n; ++i) {
    if (!dup[static_cast<size_t>(i)]) {
      uniq.push_back(i);
      upts.push_back(pts[static_cast<size_t>(i)]);
    }
  }
  if (upts.size() == 1) return uniq;
  auto facets = hull_facets(upts, tol);
  if (!facets.empty()) {
    std::vector<std::vector<int>> incident(upts.size());
    for (size_t f = 0; f < facets.size(); ++f) {
      for (int i : facets[f].points) incident[static_cast<size_t>(i)].push_back(static_cast<int>(f));
    }
    for (size_t i = 0; i < upts.size(); ++i) {
      if (static_cast<int>(incident[i].size()) < d) continue;
      Mat N(static_cast<Eigen::Index>(incident[i].size()), d);
      for (size_t k = 0; k < incident[i].size(); ++k) N.row(static_cast<Eigen::Index>(k)) = facets[static_cast<size_t>(incident[i][k])].normal.transpose();
      if (matrix_rank(N, 1e-9) == d) out.push_back(uniq[i]);
    }
    return out;
  }
  // Lower-dimensional set: fall back to one hull-membership LP per point.
  for (size_t i = 0; i < upts.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < upts.size(); ++j) {
      if (j != i) others.push_back(upts[j]);
    }
    if (!in_hull(others, upts[i], 1e-9)) out.push_back(uniq[i]);
  }
  return out;
}

std::pair<std::vector<int>, std::vector<double>> caratheodory_reduce(const std::vector<Vec>& pts,
                                                                     std::vector<double> weights) {
  std::vector<int> idx;
  std::vector<double> w;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (weights[i] > 1e-15) {
      idx.push_back(static_cast<int>(i));
      w.push_back(weights[i]);
    }
  }
  while (idx.size() > 1) {
    const int k = static_cast<int>(idx.size());
    const int d = static_cast<int>(pts.front().size());
    // Affine dependency: sum mu_i p_i = 0, sum mu_i = 0.
    Mat A(d + 1, k);
    for (int i = 0; i < k; ++i) {
      A.block(0, i, d, 1) = pts[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      A(d, i) = 1.0;
    }
    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(1e-10);
    if (lu.rank() == k) break;
    Vec mu = lu.kernel().col(0);
    if (mu.maxCoeff() <= 0) mu = -mu;
    double step = INFINITY;
    int drop = -1;
    for (int i = 0; i < k; ++i) {
      if (mu(i) > 1e-14) {
        double t = w[static_cast<size_t>(i)] / mu(i);
        if (t < step) {
          step = t;
          drop = i;
        }
      }
    }
    if (drop < 0) break;
    for (int i = 0; i < k; ++i) w[static_cast<size_t>(i)] -= step * mu(i);
    std::vector<int> nidx;
    std::vector<double> nw;
    for (int i = 0; i < k; ++i) {
      if (i != drop && w[static_cast<size_t>(i)] > 1e-15) {
        nidx.push_back(idx[static_cast<size_t>(i)]);
        nw.push_back(w[static_cast<size_t>(i)]);
      }
    }
    idx = std::move(nidx);
    w = std::move(nw);
  }
  double total = 0.0;
  for (double v : w) total += v;
  for (auto& v : w) v /= total;
  return {idx, w};
}

}  // namespace tspn
