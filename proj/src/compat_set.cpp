#include "ddchan/compat_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ddchan {

namespace {

constexpr double kTieTol = 1e-12;

kernels::SetProfile make_profile(const CompatibleSet& s) {
    kernels::SetProfile p;
    if (s.kind == SetKind::Segment && s.apex <= 0.0) {
        // zero-height segment: only |y| <= tol passes
        p.sel_x = -1.0;
        p.line_a = 0.0;
        p.line_b = 1.0;
        p.line_c = 0.0;
        return p;
    }
    p.sel_x = s.corner.x;
    p.b_y = s.apex;
    if (s.kind == SetKind::EllipseCorner || s.kind == SetKind::EllipseTangent) {
        p.r = (s.d2 * s.d2 - s.d3 * s.d3) / (s.d2 * s.d2);
        p.inv_w = 1.0 / s.c3;
    }
    p.line_a = s.corner.y;
    p.line_b = 1.0 - s.corner.x;
    p.line_c = s.corner.y;
    return p;
}

}  // namespace

std::optional<double> mu(const CanonicalChannel& ch) {
    if (ch.c3 <= 0.0 || ch.d3 <= 0.0) return std::nullopt;
    return (1.0 - ch.c3) / ch.c3 * (ch.d2 * ch.d2 - ch.d3 * ch.d3) /
           (ch.d3 * ch.d3);
}

double boundary_y(double x, const CanonicalChannel& ch, double tol) {
    const double xa = std::fabs(x);
    if (xa > ch.c3 + tol) throw OutsideStripError("|x| exceeds the strip width c3");
    if (ch.d2 <= ch.d3) return ch.d3;
    const double xc = std::min(xa, ch.c3);
    const double inner =
        ch.d2 * ch.d2 * ch.c3 * ch.c3 - (ch.d2 * ch.d2 - ch.d3 * ch.d3) * xc * xc;
    return std::sqrt(std::max(0.0, inner)) / ch.c3;
}

CompatibleSet build(const CanonicalChannel& ch, double cp_tol) {
    if (!is_completely_positive(ch, cp_tol))
        throw NotCompletelyPositiveError("channel is not completely positive");

    CompatibleSet s;
    s.d2 = ch.d2;
    s.d3 = ch.d3;
    s.c3 = ch.c3;

    if (ch.c3 <= 0.0) {
        s.kind = SetKind::Segment;
        s.apex = std::max(ch.d2, ch.d3);
        s.corner = {0.0, s.apex};
        s.q_xx = 0.0;
        s.q_yy = s.apex > 0.0 ? 1.0 / (s.apex * s.apex) : 0.0;
    } else if (ch.d2 <= ch.d3) {
        s.kind = SetKind::RectangleLike;
        s.apex = ch.d3;
        s.corner = {ch.c3, ch.d3};
        s.q_xx = 0.0;
        s.q_yy = ch.d3 > 0.0 ? 1.0 / (ch.d3 * ch.d3) : 0.0;
    } else {
        const double gap = ch.d2 * ch.d2 - ch.d3 * ch.d3;
        const double x_t = ch.d2 * ch.d2 * ch.c3 * ch.c3 / gap;
        s.apex = ch.d2;
        s.q_xx = gap / (ch.d2 * ch.d2 * ch.c3 * ch.c3);
        s.q_yy = 1.0 / (ch.d2 * ch.d2);
        if (x_t >= ch.c3 - kTieTol) {
            s.kind = SetKind::EllipseCorner;
            s.corner = {ch.c3, boundary_y(ch.c3, ch)};
        } else {
            s.kind = SetKind::EllipseTangent;
            s.corner = {x_t, boundary_y(x_t, ch)};
        }
    }
    s.profile = make_profile(s);
    return s;
}

bool contains(const CompatibleSet& s, const XYPoint& pt, double tol) {
    return kernels::profile_contains(s.profile, pt.x, pt.y, tol);
}

double lambda_omega(double omega, const CanonicalChannel& ch) {
    if (omega < 0.0) throw OutOfRangeError("witness parameter must be >= 0");
    if (ch.c3 <= 0.0) return std::max(ch.d2, ch.d3);
    if (ch.d2 <= ch.d3) return ch.d3 + ch.c3 * omega;  // omega0 <= 0
    const double gap = ch.d2 * ch.d2 - ch.d3 * ch.d3;
    if (ch.d3 <= 0.0) {
        // omega0 infinite: ellipse branch for all omega
        return std::sqrt(ch.d2 * ch.d2 + ch.c3 * ch.c3 * omega * omega);
    }
    const double omega0 = gap / (ch.d3 * ch.c3);
    if (omega >= omega0) return ch.d3 + ch.c3 * omega;
    return ch.d2 * std::sqrt(1.0 + ch.c3 * ch.c3 * omega * omega / gap);
}

double witness_threshold(double omega, const CanonicalChannel& ch) {
    return (1.0 + lambda_omega(omega, ch)) / 2.0;
}

namespace {

// The witness family stays informative only while lambda(omega) >= omega;
// past the crossing, the trivial decoding (which reaches (+-1, 0) for any
// encoding) attains the threshold and the witness line stops cutting. The
// crossing is where the witness line pivots through (1, 0), so capping the
// maximizer there makes the witness test match the convex hull exactly.
double omega_crossing(const CanonicalChannel& ch) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (ch.c3 <= 0.0) return std::max(ch.d2, ch.d3);
    if (ch.d2 <= ch.d3)  // affine branch everywhere
        return ch.c3 < 1.0 ? ch.d3 / (1.0 - ch.c3) : kInf;
    const double gap = ch.d2 * ch.d2 - ch.d3 * ch.d3;
    if (ch.c3 < 1.0 && ch.d3 > 0.0) {
        const double wa = ch.d3 / (1.0 - ch.c3);
        const double omega0 = gap / (ch.d3 * ch.c3);
        if (wa >= omega0) return wa;  // crossing in the affine branch
    }
    const double denom = gap - ch.d2 * ch.d2 * ch.c3 * ch.c3;
    if (denom > 0.0) return ch.d2 * std::sqrt(gap / denom);
    return kInf;
}

}  // namespace

WitnessEvaluation witness_max_violation(const XYPoint& pt, const CanonicalChannel& ch,
                                        double strip_tol) {
    const XYPoint q = symmetrize(pt);
    if (q.x > ch.c3 + strip_tol)
        throw UnboundedViolationError("witness violation unbounded for |x| > c3");
    const double x = std::min(q.x, ch.c3);

    double omega_star = 0.0;
    if (ch.d2 > ch.d3) {
        const double gap = ch.d2 * ch.d2 - ch.d3 * ch.d3;
        const double inner = ch.c3 * ch.c3 * ch.d2 * ch.d2 - gap * x * x;
        omega_star = inner > 0.0 ? gap * x / (ch.c3 * std::sqrt(inner))
                                 : std::numeric_limits<double>::infinity();
    }
    omega_star = std::min(omega_star, omega_crossing(ch));

    WitnessEvaluation ev;
    ev.omega = omega_star;
    ev.lambda = lambda_omega(omega_star, ch);
    ev.threshold = (1.0 + ev.lambda) / 2.0;
    ev.violation = q.y + omega_star * x - ev.lambda;
    return ev;
}

Vec3 optimal_encoding(double x, const CanonicalChannel& ch) {
    if (std::fabs(x) > ch.c3 + 1e-12)
        throw OutsideStripError("encoding defined on |x| <= c3");
    const double xc = std::clamp(x, -ch.c3, ch.c3);
    if (ch.d2 <= ch.d3) return {0.0, 0.0, 1.0};
    const double w2 = std::max(0.0, ch.c3 * ch.c3 - xc * xc);
    const double norm =
        std::sqrt(ch.d2 * ch.d2 * w2 + ch.d3 * ch.d3 * xc * xc);
    if (norm <= 0.0) return {0.0, 1.0, 0.0};
    return {0.0, ch.d2 * std::sqrt(w2) / norm, ch.d3 * xc / norm};
}

Vec3 optimal_decoding(double x, const CanonicalChannel& ch) {
    if (std::fabs(x) > ch.c3 + 1e-12)
        throw OutsideStripError("decoding defined on |x| <= c3");
    if (ch.d2 <= ch.d3) return {0.0, 0.0, 1.0};
    if (ch.c3 <= 0.0) return {0.0, 1.0, 0.0};
    const double xc = std::clamp(x, -ch.c3, ch.c3);
    const double w = std::sqrt(std::max(0.0, ch.c3 * ch.c3 - xc * xc));
    return {0.0, w / ch.c3, xc / ch.c3};
}

double area(const CompatibleSet& s) {
    switch (s.kind) {
        case SetKind::Segment:
            return 2.0 * s.apex;  // rhombus with diagonals 2 and 2*apex
        case SetKind::RectangleLike:
            return 2.0 * s.d3 * (1.0 + s.c3);
        case SetKind::EllipseCorner:
        case SetKind::EllipseTangent: {
            // 4 * integral of the arc over [0, x_s] plus the two hull
            // triangles from (+-x_s, y_s) to (+-1, 0)
            const double gap = s.d2 * s.d2 - s.d3 * s.d3;
            const double a = s.d2 * s.c3 / std::sqrt(gap);  // ellipse semi-axis
            const double b = s.d2;
            const double u = std::min(1.0, s.corner.x / a);
            const double arc =
                0.5 * a * b * (std::asin(u) + u * std::sqrt(std::max(0.0, 1.0 - u * u)));
            return 4.0 * arc + 2.0 * s.corner.y * (1.0 - s.corner.x);
        }
    }
    return 0.0;
}

std::vector<XYPoint> polygon_of(const CompatibleSet& s, int n) {
    if (n < 4) throw OutOfRangeError("polygon_of needs n >= 4");
    if (s.kind == SetKind::Segment) {
        if (s.apex <= 0.0) return {{1.0, 0.0}, {-1.0, 0.0}};
        return {{1.0, 0.0}, {0.0, s.apex}, {-1.0, 0.0}, {0.0, -s.apex}};
    }

    const int chain = std::max(2, (n - 2) / 2);
    std::vector<XYPoint> upper;
    upper.reserve(chain);
    if (s.kind == SetKind::RectangleLike) {
        for (int i = 0; i < chain; ++i) {
            const double t = static_cast<double>(i) / (chain - 1);
            upper.push_back({s.corner.x * (1.0 - 2.0 * t), s.corner.y});
        }
    } else {
        const double gap = s.d2 * s.d2 - s.d3 * s.d3;
        const double a = s.d2 * s.c3 / std::sqrt(gap);
        const double t_s = std::asin(std::min(1.0, s.corner.x / a));
        for (int i = 0; i < chain; ++i) {
            const double t = t_s * (1.0 - 2.0 * static_cast<double>(i) / (chain - 1));
            upper.push_back({a * std::sin(t), s.d2 * std::cos(t)});
        }
        // pin the endpoints to the exact corner/tangency coordinates
        upper.front() = s.corner;
        upper.back() = {-s.corner.x, s.corner.y};
    }

    std::vector<XYPoint> poly;
    poly.reserve(2 * upper.size() + 2);
    poly.push_back({1.0, 0.0});
    for (const XYPoint& p : upper) poly.push_back(p);
    poly.push_back({-1.0, 0.0});
    for (const XYPoint& p : upper) poly.push_back({-p.x, -p.y});
    return poly;
}

bool indistinguishable(const CanonicalChannel& a, const CanonicalChannel& b,
                       double tol) {
    const auto ma = mu(a);
    const auto mb = mu(b);
    const auto eq = [tol](double u, double v) { return std::fabs(u - v) <= tol; };

    if (a.c3 <= tol && b.c3 <= tol)  // Pauli regime
        return eq(std::max(a.d2, a.d3), std::max(b.d2, b.d3));
    if (ma && mb) {
        if (*ma <= 0.0 && *mb <= 0.0) return eq(a.d3, b.d3) && eq(a.c3, b.c3);
        if (*ma > 0.0 && *ma < 1.0 && *mb > 0.0 && *mb < 1.0)
            return eq(a.d2, b.d2) && eq(a.d3, b.d3) && eq(a.c3, b.c3);
        if (*ma >= 1.0 && *mb >= 1.0) {
            const double ra = (a.d2 * a.d2 - a.d3 * a.d3) / (a.c3 * a.c3);
            const double rb = (b.d2 * b.d2 - b.d3 * b.d3) / (b.c3 * b.c3);
            return eq(a.d2, b.d2) && eq(ra, rb);
        }
        return false;  // different regimes are distinguishable
    }
    // outside the tabulated regimes (one-sided d3 = 0 with c3 > 0): channels
    // with equal parameters share the set, anything else separates
    return eq(a.d2, b.d2) && eq(a.d3, b.d3) && eq(a.c3, b.c3);
}

}  // namespace ddchan
