#pragma once

#include <string>
#include <vector>

#include "icfb/errors.hpp"

namespace icfb {

inline constexpr double kCollinearTol = 1e-12;
inline constexpr double kContainTol = 1e-9;

/// Rate region cut out by R1 <= b1, R2 <= b2, R1+R2 <= b12, R1,R2 >= 0.
struct TriBoundRegion {
  double b1 = 0.0;
  double b2 = 0.0;
  double b12 = 0.0;
};

/// The [0,a] x [0,b] operand of the oplus/ominus region shifts.
struct Rect {
  double a = 0.0;
  double b = 0.0;
};

struct Point2 {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Convex polygon in the nonnegative quadrant, counterclockwise vertices.
struct ConvexRegion2D {
  std::vector<Point2> vertices;
};

/// Removes redundant constraints: b1 <- min(b1,b12), b2 <- min(b2,b12),
/// b12 <- min(b12, b1+b2). Idempotent. Negative input rejected.
TriBoundRegion tighten(double b1, double b2, double b12);

/// Region shift outward by a rectangle: bounds grow by (a, b, a+b).
TriBoundRegion oplus(const TriBoundRegion& r, const Rect& rect);

/// Region shift inward, clamped at the origin-only region (0,0,0).
TriBoundRegion ominus(const TriBoundRegion& r, const Rect& rect);

/// Counterclockwise vertices of the pentagon (or degenerate polygon),
/// origin included.
std::vector<Point2> region_vertices(const TriBoundRegion& r);
ConvexRegion2D to_polygon(const TriBoundRegion& r);

bool contains(const TriBoundRegion& outer, const TriBoundRegion& inner,
              double tol = kContainTol);
bool contains(const ConvexRegion2D& outer, const Point2& p, double tol = kContainTol);
bool contains(const ConvexRegion2D& outer, const ConvexRegion2D& inner,
              double tol = kContainTol);
bool contains(const ConvexRegion2D& outer, const TriBoundRegion& inner,
              double tol = kContainTol);

/// Monotone-chain hull of all vertex sets plus the origin.
ConvexRegion2D hull_union(const std::vector<TriBoundRegion>& regions);

struct GapTriple {
  double g1 = 0.0;
  double g2 = 0.0;
  double g12 = 0.0;
  double max() const;
};

/// Per-constraint bound differences outer - inner; requires inner within outer.
GapTriple per_constraint_gap(const TriBoundRegion& outer, const TriBoundRegion& inner,
                             double tol = kContainTol);

/// CSV export, header "r1,r2", one vertex per row, closing vertex omitted.
std::string region_csv(const ConvexRegion2D& region);

}  // namespace icfb
