#include "ddchan/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ddchan/compat_set.hpp"

namespace ddchan {

namespace {

double distance_at(const CompatibleSet& s0, const CompatibleSet& s1, int n) {
    ConvexPolygon p0{polygon_of(s0, n)};
    ConvexPolygon p1{polygon_of(s1, n)};
    const double a0 = polygon_area(p0);
    const double a1 = polygon_area(p1);
    const double ai = polygon_area(intersect(p0, p1));
    const double au = a0 + a1 - ai;
    const double denom = std::max(a0, a1);
    return std::max(0.0, (au - ai) / denom);
}

}  // namespace

double symmetric_difference_distance(const CanonicalChannel& c0,
                                     const CanonicalChannel& c1, int n) {
    if (n < 64) throw OutOfRangeError("symmetric_difference_distance needs n >= 64");
    // order the arguments canonically so d(a, b) and d(b, a) are evaluated
    // through the identical float path
    const auto key = [](const CanonicalChannel& c) {
        return std::array<double, 3>{c.d2, c.d3, c.c3};
    };
    if (key(c1) < key(c0)) return symmetric_difference_distance(c1, c0, n);
    const CompatibleSet s0 = build(c0);
    const CompatibleSet s1 = build(c1);

    if (area(s0) <= 0.0 && area(s1) <= 0.0) {
        // both sets are segments; equal iff apexes match (both are
        // [-1,1] x {0} whenever the area vanishes)
        return std::fabs(s0.apex - s1.apex) <= 1e-12 ? 0.0 : 1.0;
    }

    double d = distance_at(s0, s1, n);
    for (int rounds = 0; rounds < 4; ++rounds) {
        n *= 2;
        const double d2 = distance_at(s0, s1, n);
        const double step = std::fabs(d2 - d);
        d = d2;
        if (step < 1e-4) break;
    }
    return d;
}

}  // namespace ddchan
