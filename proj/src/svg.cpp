#include "tspn/svg.hpp"

#include "tspn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace tspn {

namespace {

std::string fmt(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;  // avoid "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Rect {
  double x0, y0, x1, y1;
};

// Portion of the line n.x = c inside the rectangle, if any.
bool clip_line(const Hyperplane& h, const Rect& r, Vec& a, Vec& b) {
  std::vector<Vec> hits;
  const double nx = h.normal(0), ny = h.normal(1), c = h.offset;
  auto add = [&](double x, double y) {
    if (x < r.x0 - 1e-9 || x > r.x1 + 1e-9 || y < r.y0 - 1e-9 || y > r.y1 + 1e-9) return;
    Vec p(2);
    p << x, y;
    hits.push_back(p);
  };
  if (std::abs(ny) > 1e-12) {
    add(r.x0, (c - nx * r.x0) / ny);
    add(r.x1, (c - nx * r.x1) / ny);
  }
  if (std::abs(nx) > 1e-12) {
    add((c - ny * r.y0) / nx, r.y0);
    add((c - ny * r.y1) / nx, r.y1);
  }
  if (hits.size() < 2) return false;
  Vec dir(2);
  dir << -ny, nx;
  auto key = [&](const Vec& p) { return p.dot(dir); };
  auto [mn, mx] = std::minmax_element(hits.begin(), hits.end(), [&](const Vec& p, const Vec& q) { return key(p) < key(q); });
  a = *mn;
  b = *mx;
  return true;
}

const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const std::vector<Hyperplane>& inst, const std::vector<Tour>& tours) {
  for (const auto& h : inst) {
    if (h.dim() != 2) throw Error(ErrorKind::DimensionUnsupported, "SVG output needs d = 2");
  }
  for (const auto& t : tours) {
    for (const auto& p : t.waypoints) {
      if (p.size() != 2) throw Error(ErrorKind::DimensionUnsupported, "SVG output needs d = 2");
    }
  }
  std::vector<Vec> pts;
  for (size_t i = 0; i < inst.size(); ++i) {
    pts.push_back(inst[i].offset * inst[i].normal);
    for (size_t j = 0; j < i; ++j) {
      Mat A(2, 2);
      A.row(0) = inst[i].normal.transpose();
      A.row(1) = inst[j].normal.transpose();
      if (std::abs(A.determinant()) < 1e-9) continue;
      Vec rhs(2);
      rhs << inst[i].offset, inst[j].offset;
      pts.push_back(A.partialPivLu().solve(rhs));
    }
  }
  for (const auto& t : tours) pts.insert(pts.end(), t.waypoints.begin(), t.waypoints.end());
  Rect r{-1, -1, 1, 1};
  if (!pts.empty()) {
    r = {pts[0](0), pts[0](1), pts[0](0), pts[0](1)};
    for (const auto& p : pts) {
      r.x0 = std::min(r.x0, p(0));
      r.y0 = std::min(r.y0, p(1));
      r.x1 = std::max(r.x1, p(0));
      r.y1 = std::max(r.y1, p(1));
    }
  }
  double span = std::max({r.x1 - r.x0, r.y1 - r.y0, 1.0});
  double margin = 0.1 * span;
  r.x0 -= margin;
  r.y0 -= margin;
  r.x1 += margin;
  r.y1 += margin;
  const double w = r.x1 - r.x0, hgt = r.y1 - r.y0;
  const double stroke = 0.004 * std::max(w, hgt);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(r.x0) + " " + fmt(-r.y1) + " " + fmt(w) + " " +
         fmt(hgt) + "\" width=\"600\" height=\"" + fmt(600.0 * hgt / w) + "\">\n";
  for (const auto& h : inst) {
    Vec a, b;
    if (!clip_line(h, r, a, b)) continue;
    out += "  <line x1=\"" + fmt(a(0)) + "\" y1=\"" + fmt(-a(1)) + "\" x2=\"" + fmt(b(0)) + "\" y2=\"" + fmt(-b(1)) +
           "\" stroke=\"#999999\" stroke-width=\"" + fmt(stroke) + "\"/>\n";
  }
  for (size_t k = 0; k < tours.size(); ++k) {
    const auto& t = tours[k];
    if (t.waypoints.empty()) continue;
    const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
    std::string coords;
    for (const auto& p : t.waypoints) coords += fmt(p(0)) + "," + fmt(-p(1)) + " ";
    if (t.closed) coords += fmt(t.waypoints[0](0)) + "," + fmt(-t.waypoints[0](1)) + " ";
    coords.pop_back();
    out += "  <polyline points=\"" + coords + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
           fmt(1.5 * stroke) + "\"/>\n";
    for (const auto& p : t.waypoints) {
      out += "  <circle cx=\"" + fmt(p(0)) + "\" cy=\"" + fmt(-p(1)) + "\" r=\"" + fmt(2.5 * stroke) + "\" fill=\"" +
             color + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

void emit_svg(const std::vector<Hyperplane>& inst, const std::vector<Tour>& tours, const std::string& path) {
  std::string s = render_svg(inst, tours);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
  f << s;
}

}  // namespace tspn
