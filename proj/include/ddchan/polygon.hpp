#pragma once

#include <vector>

#include "ddchan/correlation.hpp"

// Convex polygon plumbing for the symmetric-difference metric: shoelace area,
// half-plane clipping intersection, monotone-chain hull.

namespace ddchan {

struct ConvexPolygon {
    std::vector<XYPoint> vertices;  // counter-clockwise

    bool empty() const { return vertices.size() < 3; }
};

double polygon_area(const ConvexPolygon& p);

// Convexity check: all consecutive edge cross-products >= -1e-12 (CCW with
// collinear runs allowed).
bool is_convex_ccw(const ConvexPolygon& p, double tol = 1e-12);

// Intersection of convex polygons by clipping `a` against each edge of `b`.
// Result may be empty.
ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);

// Convex hull of a point set (Andrew monotone chain), counter-clockwise.
ConvexPolygon convex_hull(std::vector<XYPoint> pts);

}  // namespace ddchan
