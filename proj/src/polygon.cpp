#include "ddchan/polygon.hpp"

#include <algorithm>
#include <cmath>

namespace ddchan {

namespace {

double cross(const XYPoint& o, const XYPoint& a, const XYPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// signed distance proxy of p to the directed edge a->b (positive = left side)
double side(const XYPoint& a, const XYPoint& b, const XYPoint& p) {
    return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

XYPoint edge_intersection(const XYPoint& p, const XYPoint& q, double sp, double sq) {
    const double t = sp / (sp - sq);
    return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

}  // namespace

double polygon_area(const ConvexPolygon& p) {
    const auto& v = p.vertices;
    if (v.size() < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const XYPoint& a = v[i];
        const XYPoint& b = v[(i + 1) % v.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return std::fabs(s) / 2.0;
}

bool is_convex_ccw(const ConvexPolygon& p, double tol) {
    const auto& v = p.vertices;
    if (v.size() < 3) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const XYPoint& a = v[i];
        const XYPoint& b = v[(i + 1) % v.size()];
        const XYPoint& c = v[(i + 2) % v.size()];
        if (cross(a, b, c) < -tol) return false;
    }
    return true;
}

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<XYPoint> out = a.vertices;
    const auto& clip = b.vertices;
    for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
        const XYPoint& ca = clip[e];
        const XYPoint& cb = clip[(e + 1) % clip.size()];
        std::vector<XYPoint> in;
        in.swap(out);
        out.reserve(in.size() + 2);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const XYPoint& prev = in[(i + in.size() - 1) % in.size()];
            const XYPoint& cur = in[i];
            const double sp = side(ca, cb, prev);
            const double sc = side(ca, cb, cur);
            if (sc >= 0.0) {
                if (sp < 0.0) out.push_back(edge_intersection(prev, cur, sp, sc));
                out.push_back(cur);
            } else if (sp >= 0.0) {
                out.push_back(edge_intersection(prev, cur, sp, sc));
            }
        }
    }
    ConvexPolygon r;
    r.vertices = std::move(out);
    if (r.vertices.size() < 3) r.vertices.clear();
    return r;
}

ConvexPolygon convex_hull(std::vector<XYPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const XYPoint& a, const XYPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const XYPoint& a, const XYPoint& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    if (pts.size() < 3) return {pts};

    std::vector<XYPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const XYPoint& p : pts) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return {std::move(hull)};
}

}  // namespace ddchan
