#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "icfb/regions.hpp"

using namespace icfb;

namespace {

// Direct membership test against the three half-planes, with a guard band so
// points near the boundary are skipped rather than argued about.
int classify(const TriBoundRegion& r, const Point2& p, double band) {
  const double slack = std::min(
      {r.b1 - p.r1, r.b2 - p.r2, r.b12 - p.r1 - p.r2, p.r1, p.r2});
  if (slack > band) return 1;
  if (slack < -band) return -1;
  return 0;
}

bool polygon_contains_point(const ConvexRegion2D& poly, const Point2& p) {
  return contains(poly, p);
}

}  // namespace

TEST_CASE("tighten removes redundant constraints and is idempotent") {
  const TriBoundRegion r = tighten(3.0, 4.0, 10.0);
  CHECK(r.b1 == 3.0);
  CHECK(r.b2 == 4.0);
  CHECK(r.b12 == 7.0);  // b12 capped at b1 + b2

  const TriBoundRegion s = tighten(9.0, 4.0, 5.0);
  CHECK(s.b1 == 5.0);  // b1 capped at b12
  CHECK(s.b2 == 4.0);
  CHECK(s.b12 == 5.0);

  const TriBoundRegion t = tighten(s.b1, s.b2, s.b12);
  CHECK(t.b1 == s.b1);
  CHECK(t.b2 == s.b2);
  CHECK(t.b12 == s.b12);

  CHECK_THROWS_AS(tighten(-1.0, 2.0, 3.0), SchemaError);
}

TEST_CASE("oplus and ominus shift bounds rectangle-wise") {
  const TriBoundRegion r = tighten(3.0, 4.0, 5.0);
  const TriBoundRegion up = oplus(r, {1.0, 2.0});
  CHECK(up.b1 == 4.0);
  CHECK(up.b2 == 6.0);
  CHECK(up.b12 == 8.0);

  const TriBoundRegion down = ominus(up, {1.0, 2.0});
  CHECK(down.b1 == r.b1);
  CHECK(down.b2 == r.b2);
  CHECK(down.b12 == r.b12);

  const TriBoundRegion clamped = ominus(r, {10.0, 10.0});
  CHECK(clamped.b1 == 0.0);
  CHECK(clamped.b2 == 0.0);
  CHECK(clamped.b12 == 0.0);
}

TEST_CASE("region_vertices gives the counterclockwise pentagon") {
  const auto v = region_vertices(tighten(3.0, 4.0, 5.0));
  REQUIRE(v.size() == 5);
  CHECK(v[0].r1 == 0.0);
  CHECK(v[0].r2 == 0.0);
  CHECK(v[1].r1 == 3.0);
  CHECK(v[1].r2 == 0.0);
  CHECK(v[2].r1 == 3.0);
  CHECK(v[2].r2 == 2.0);
  CHECK(v[3].r1 == 1.0);
  CHECK(v[3].r2 == 4.0);
  CHECK(v[4].r1 == 0.0);
  CHECK(v[4].r2 == 4.0);

  // rectangle when the sum constraint is slack after tightening
  const auto rect = region_vertices(tighten(2.0, 3.0, 9.0));
  CHECK(rect.size() == 4);

  // degenerate origin-only region
  const auto origin = region_vertices(tighten(0.0, 0.0, 0.0));
  REQUIRE(origin.size() == 1);
  CHECK(origin[0].r1 == 0.0);
  CHECK(origin[0].r2 == 0.0);
}

TEST_CASE("contains for tri-bound pairs") {
  const TriBoundRegion big = tighten(3.0, 4.0, 5.0);
  CHECK(contains(big, tighten(1.0, 1.0, 2.0)));
  CHECK(contains(big, big));
  CHECK_FALSE(contains(tighten(1.0, 1.0, 2.0), big));
  CHECK_FALSE(contains(big, tighten(3.0, 4.0, 6.5)));
  // tolerance absorbs tiny excursions
  CHECK(contains(big, tighten(3.0 + 1e-12, 4.0, 5.0)));
}

TEST_CASE("hull_union of a single region reproduces its polygon") {
  const TriBoundRegion r = tighten(3.0, 4.0, 5.0);
  const ConvexRegion2D hull = hull_union({r});
  const ConvexRegion2D poly = to_polygon(r);
  CHECK(contains(hull, poly));
  CHECK(contains(poly, hull));
}

TEST_CASE("hull_union of two triangles and constituent containment") {
  // (1,0,1) and (0,1,1): hull is the triangle with legs of length 1
  const TriBoundRegion a = tighten(1.0, 0.0, 1.0);
  const TriBoundRegion b = tighten(0.0, 1.0, 1.0);
  const ConvexRegion2D hull = hull_union({a, b});
  CHECK(polygon_contains_point(hull, {1.0, 0.0}));
  CHECK(polygon_contains_point(hull, {0.0, 1.0}));
  CHECK(polygon_contains_point(hull, {0.5, 0.5}));
  CHECK_FALSE(polygon_contains_point(hull, {0.6, 0.6}));
  CHECK(contains(hull, a));
  CHECK(contains(hull, b));

  // any union contains each constituent
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<TriBoundRegion> rs;
    for (int k = 0; k < 4; ++k) {
      const double b1 = uni(rng), b2 = uni(rng);
      rs.push_back(tighten(b1, b2, uni(rng) + std::max(b1, b2)));
    }
    const ConvexRegion2D u = hull_union(rs);
    for (const auto& reg : rs) CHECK(contains(u, reg));
  }
}

TEST_CASE("per_constraint_gap") {
  const GapTriple zero = per_constraint_gap(tighten(3.0, 4.0, 5.0), tighten(3.0, 4.0, 5.0));
  CHECK(zero.g1 == 0.0);
  CHECK(zero.g2 == 0.0);
  CHECK(zero.g12 == 0.0);
  CHECK(zero.max() == 0.0);

  const GapTriple g = per_constraint_gap(tighten(4.0, 6.0, 9.0), tighten(3.0, 4.0, 6.0));
  CHECK(g.g1 == 1.0);
  CHECK(g.g2 == 2.0);
  CHECK(g.g12 == 3.0);
  CHECK(g.max() == 3.0);

  CHECK_THROWS_AS(per_constraint_gap(tighten(1.0, 1.0, 2.0), tighten(3.0, 4.0, 5.0)),
                  NumericError);
}

TEST_CASE("polygon membership matches the half-plane definition on a grid") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, 8.0);
  const double band = 1e-6;
  for (int rep = 0; rep < 100; ++rep) {
    const double b1 = uni(rng), b2 = uni(rng);
    const TriBoundRegion r = tighten(b1, b2, uni(rng) + 0.5 * (b1 + b2));
    const ConvexRegion2D poly = to_polygon(r);
    std::uniform_real_distribution<double> pt(-1.0, 9.0);
    for (int k = 0; k < 100; ++k) {
      const Point2 p{pt(rng), pt(rng)};
      const int side = classify(r, p, band);
      if (side == 0) continue;  // guard band around the boundary
      CHECK(polygon_contains_point(poly, p) == (side > 0));
    }
  }
}

TEST_CASE("region_csv layout") {
  const std::string csv = region_csv(to_polygon(tighten(1.0, 1.0, 2.0)));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r1,r2");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.find(',') != std::string::npos);
    ++rows;
  }
  CHECK(rows == 4);  // unit square, closing vertex omitted
}
