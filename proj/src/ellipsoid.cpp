#include "tspn/ellipsoid.hpp"

#include "tspn/errors.hpp"
#include "tspn/simplex.hpp"

#include <cmath>

namespace tspn {

double Ellipsoid::log_volume_factor() const { return std::log(shape.determinant()); }

bool Ellipsoid::contains(const Vec& x, double tol) const {
  Vec u = shape.ldlt().solve(x - center);
  return u.norm() <= 1.0 + tol;
}

AffineMap AffineMap::inverse() const {
  AffineMap inv;
  inv.linear = linear.inverse();
  inv.shift = -inv.linear * shift;
  return inv;
}

std::pair<Vec, double> chebyshev_ball(const PolytopeH& p) {
  const int d = p.dim;
  // max r s.t. <n, x> - r >= offset (n unit, inward).
  lp::Problem prob(d + 1);
  prob.objective[static_cast<size_t>(d)] = -1.0;
  for (const auto& h : p.halfspaces) {
    auto& row = prob.add_row(lp::Sense::GreaterEqual, h.offset);
    for (int j = 0; j < d; ++j) row.coeffs[static_cast<size_t>(j)] = h.normal(j);
    row.coeffs[static_cast<size_t>(d)] = -h.normal.norm();
  }
  auto res = lp::solve(prob);
  if (res.status != lp::Status::Optimal) throw Error(ErrorKind::DegenerateBody, "Chebyshev LP failed");
  Vec c = Eigen::Map<Vec>(res.x.data(), d);
  return {c, res.x[static_cast<size_t>(d)]};
}

namespace {

// Symmetric basis E_k: diagonal entries first, then (i < j) pairs.
struct SymBasis {
  int d;
  std::vector<std::pair<int, int>> ij;
  explicit SymBasis(int dim) : d(dim) {
    for (int i = 0; i < d; ++i) ij.emplace_back(i, i);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) ij.emplace_back(i, j);
  }
  int size() const { return static_cast<int>(ij.size()); }
  Mat E(int k) const {
    Mat m = Mat::Zero(d, d);
    auto [i, j] = ij[static_cast<size_t>(k)];
    m(i, j) = 1.0;
    m(j, i) = 1.0;
    return m;
  }
  Mat assemble(const Vec& theta) const {
    Mat m = Mat::Zero(d, d);
    for (int k = 0; k < size(); ++k) {
      auto [i, j] = ij[static_cast<size_t>(k)];
      m(i, j) = theta(k);
      m(j, i) = theta(k);
    }
    return m;
  }
};

struct Barrier {
  const std::vector<Vec>& a;  // outward normals: <a_i, x> <= b_i
  const std::vector<double>& b;
  const SymBasis& basis;
  int d;

  // Value of t * (-log det B) - sum log s_i, or +inf outside the domain.
  double value(const Vec& z, double t) const {
    const int nb = basis.size();
    Mat B = basis.assemble(z.head(nb));
    Vec c = z.tail(d);
    Eigen::LLT<Mat> llt(B);
    if (llt.info() != Eigen::Success) return INFINITY;
    double logdet = 0.0;
    for (int i = 0; i < d; ++i) {
      double diag = llt.matrixL()(i, i);
      if (!(diag > 0)) return INFINITY;
      logdet += 2 * std::log(diag);
    }
    double v = -t * logdet;
    for (size_t i = 0; i < a.size(); ++i) {
      double s = b[i] - a[i].dot(c) - (B * a[i]).norm();
      if (!(s > 0)) return INFINITY;
      v -= std::log(s);
    }
    return v;
  }

  void derivatives(const Vec& z, double t, Vec& grad, Mat& hess) const {
    const int nb = basis.size();
    const int nv = nb + d;
    Mat B = basis.assemble(z.head(nb));
    Vec c = z.tail(d);
    Mat Binv = B.inverse();
    grad = Vec::Zero(nv);
    hess = Mat::Zero(nv, nv);
    std::vector<Mat> Ek;
    for (int k = 0; k < nb; ++k) Ek.push_back(basis.E(k));
    for (int k = 0; k < nb; ++k) {
      Mat BE = Binv * Ek[static_cast<size_t>(k)];
      grad(k) -= t * BE.trace();
      for (int l = 0; l < nb; ++l) hess(k, l) += t * (BE * Binv * Ek[static_cast<size_t>(l)]).trace();
    }
    Vec ds(nv);
    Mat Ea(d, nb);
    for (size_t i = 0; i < a.size(); ++i) {
      Vec w = B * a[i];
      double r = w.norm();
      double s = b[i] - a[i].dot(c) - r;
      for (int k = 0; k < nb; ++k) Ea.col(k) = Ek[static_cast<size_t>(k)] * a[i];
      Vec g = (r > 0) ? Vec(Ea.transpose() * w / r) : Vec(Vec::Zero(nb));
      ds.head(nb) = -g;
      ds.tail(d) = -a[i];
      grad -= ds / s;
      hess += ds * ds.transpose() / (s * s);
      if (r > 0) {
        Mat d2r = (Ea.transpose() * Ea - g * g.transpose()) / r;
        hess.topLeftCorner(nb, nb) += d2r / s;
      }
    }
  }
};

}  // namespace

Ellipsoid max_inscribed_ellipsoid(const PolytopeH& p, double rel_volume_tol) {
  const int d = p.dim;
  auto [c0, r0] = chebyshev_ball(p);
  double scale = std::max(1.0, c0.cwiseAbs().maxCoeff());
  if (!(r0 > 1e-9 * scale)) throw Error(ErrorKind::DegenerateBody, "polytope is not full-dimensional");
  std::vector<Vec> a;
  std::vector<double> b;
  for (const auto& h : p.halfspaces) {
    a.push_back(-h.normal);
    b.push_back(-h.offset);
  }
  SymBasis basis(d);
  const int nb = basis.size();
  Barrier bar{a, b, basis, d};
  Vec z = Vec::Zero(nb + d);
  for (int i = 0; i < d; ++i) z(i) = 0.5 * r0;
  z.tail(d) = c0;
  const double m = static_cast<double>(a.size());
  // The barrier gap m/t bounds the log-volume error.
  const double gap_target = std::min(rel_volume_tol * 1e-3, 1e-9);
  for (double t = 1.0;; t *= 10.0) {
    for (int it = 0; it < 200; ++it) {
      Vec grad;
      Mat hess;
      bar.derivatives(z, t, grad, hess);
      Vec step = hess.ldlt().solve(-grad);
      double decrement = -grad.dot(step);
      if (!(decrement > 1e-14 * std::max(1.0, t))) break;
      double f0 = bar.value(z, t);
      double alpha = 1.0;
      while (alpha > 1e-14) {
        double f1 = bar.value(z + alpha * step, t);
        if (f1 <= f0 - 0.25 * alpha * decrement) break;
        alpha *= 0.5;
      }
      if (alpha <= 1e-14) break;
      z += alpha * step;
      if (decrement < 1e-12) break;
    }
    if (m / t < gap_target) break;
  }
  Ellipsoid e;
  e.shape = basis.assemble(z.head(nb));
  e.center = z.tail(d);
  return e;
}

Normalization normalize_polytope(const PolytopeH& p) {
  const int d = p.dim;
  Normalization out;
  out.ellipsoid = max_inscribed_ellipsoid(p);
  const Mat& B = out.ellipsoid.shape;
  Mat Binv = B.inverse();
  out.map.linear = Binv;
  out.map.shift = -Binv * out.ellipsoid.center;
  // x = B y + c: <n, B y + c> >= o  <=>  <B n, y> >= o - <n, c>.
  out.image.dim = d;
  out.inscribed_radius = INFINITY;
  for (const auto& h : p.halfspaces) {
    Vec n = B * h.normal;
    double len = n.norm();
    double off = (h.offset - h.normal.dot(out.ellipsoid.center)) / len;
    out.image.halfspaces.push_back(HalfSpace{n / len, off});
    out.inscribed_radius = std::min(out.inscribed_radius, -off);
  }
  PolytopeV verts = vertex_enumerate(out.image, 1e-9);
  for (const auto& v : verts.vertices) out.outer_radius = std::max(out.outer_radius, v.norm());
  if (out.outer_radius > d * (1.0 + 1e-4)) {
    throw Error(ErrorKind::ContainmentViolation, "normalized polytope leaves B(0, d)");
  }
  return out;
}

}  // namespace tspn
