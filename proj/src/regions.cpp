#include "icfb/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace icfb {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

double pos(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

TriBoundRegion tighten(double b1, double b2, double b12) {
  if (b1 < 0.0 || b2 < 0.0 || b12 < 0.0)
    throw SchemaError("tighten: bounds must be nonnegative");
  TriBoundRegion r;
  r.b1 = std::min(b1, b12);
  r.b2 = std::min(b2, b12);
  r.b12 = std::min(b12, b1 + b2);
  return r;
}

TriBoundRegion oplus(const TriBoundRegion& r, const Rect& rect) {
  return tighten(r.b1 + rect.a, r.b2 + rect.b, r.b12 + rect.a + rect.b);
}

TriBoundRegion ominus(const TriBoundRegion& r, const Rect& rect) {
  return tighten(pos(r.b1 - rect.a), pos(r.b2 - rect.b), pos(r.b12 - rect.a - rect.b));
}

std::vector<Point2> region_vertices(const TriBoundRegion& r) {
  std::vector<Point2> v;
  v.push_back({0.0, 0.0});
  v.push_back({r.b1, 0.0});
  if (r.b1 + r.b2 > r.b12) {  // sum constraint active: pentagon corner pair
    v.push_back({r.b1, r.b12 - r.b1});
    v.push_back({r.b12 - r.b2, r.b2});
  } else {
    v.push_back({r.b1, r.b2});
  }
  v.push_back({0.0, r.b2});
  // drop duplicates/collinear corners from degenerate bounds
  std::vector<Point2> out;
  for (const auto& p : v) {
    if (!out.empty() && std::abs(out.back().r1 - p.r1) <= kCollinearTol &&
        std::abs(out.back().r2 - p.r2) <= kCollinearTol)
      continue;
    out.push_back(p);
  }
  while (out.size() > 1 && std::abs(out.front().r1 - out.back().r1) <= kCollinearTol &&
         std::abs(out.front().r2 - out.back().r2) <= kCollinearTol)
    out.pop_back();
  return out;
}

ConvexRegion2D to_polygon(const TriBoundRegion& r) { return {region_vertices(r)}; }

bool contains(const TriBoundRegion& outer, const TriBoundRegion& inner, double tol) {
  for (const auto& p : region_vertices(inner)) {
    if (p.r1 > outer.b1 + tol) return false;
    if (p.r2 > outer.b2 + tol) return false;
    if (p.r1 + p.r2 > outer.b12 + tol) return false;
  }
  return true;
}

bool contains(const ConvexRegion2D& outer, const Point2& p, double tol) {
  const auto& v = outer.vertices;
  if (v.empty()) return false;
  if (v.size() == 1)
    return std::abs(p.r1 - v[0].r1) <= tol && std::abs(p.r2 - v[0].r2) <= tol;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const double len = std::hypot(b.r1 - a.r1, b.r2 - a.r2);
    if (cross(a, b, p) < -tol * std::max(1.0, len)) return false;
  }
  return true;
}

bool contains(const ConvexRegion2D& outer, const ConvexRegion2D& inner, double tol) {
  for (const auto& p : inner.vertices)
    if (!contains(outer, p, tol)) return false;
  return true;
}

bool contains(const ConvexRegion2D& outer, const TriBoundRegion& inner, double tol) {
  for (const auto& p : region_vertices(inner))
    if (!contains(outer, p, tol)) return false;
  return true;
}

ConvexRegion2D hull_union(const std::vector<TriBoundRegion>& regions) {
  if (regions.empty()) throw SchemaError("hull_union: empty region list");
  std::vector<Point2> pts{{0.0, 0.0}};
  for (const auto& r : regions) {
    auto v = region_vertices(r);
    pts.insert(pts.end(), v.begin(), v.end());
  }
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2& a, const Point2& b) {
                          return a.r1 == b.r1 && a.r2 == b.r2;
                        }),
            pts.end());
  if (pts.size() < 3) return {pts};

  // monotone chain, counterclockwise
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kCollinearTol) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= kCollinearTol) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return {hull};
}

double GapTriple::max() const { return std::max({g1, g2, g12}); }

GapTriple per_constraint_gap(const TriBoundRegion& outer, const TriBoundRegion& inner,
                             double tol) {
  if (!contains(outer, inner, tol))
    throw NumericError("per_constraint_gap: inner region not contained in outer");
  return {outer.b1 - inner.b1, outer.b2 - inner.b2, outer.b12 - inner.b12};
}

std::string region_csv(const ConvexRegion2D& region) {
  std::ostringstream os;
  os.precision(17);
  os << "r1,r2\n";
  for (const auto& p : region.vertices) os << p.r1 << ',' << p.r2 << '\n';
  return os.str();
}

}  // namespace icfb
