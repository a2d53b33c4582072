#include "ddchan/correlation.hpp"

#include <cmath>

namespace ddchan {

namespace {
constexpr double kRowTol = 1e-12;
constexpr double kClampTol = 1e-9;
}  // namespace

Correlation::Correlation(double p11, double p21, double p12, double p22)
    : p11_(p11), p21_(p21), p12_(p12), p22_(p22) {
    if (std::fabs(p11 + p21 - 1.0) > kRowTol || std::fabs(p12 + p22 - 1.0) > kRowTol)
        throw OutOfRangeError("correlation rows must sum to 1");
    for (double v : {p11, p21, p12, p22})
        if (v < -kRowTol || v > 1.0 + kRowTol)
            throw OutOfRangeError("correlation entries must lie in [0, 1]");
}

XYPoint to_xy(const Correlation& p) {
    // x = Tr[X^T p], y = Tr[Y^T p]
    return {p.p11() + p.p12() - 1.0, p.p11() - p.p12()};
}

Correlation from_xy(const XYPoint& pt) {
    XYPoint q = pt;
    if (!in_diamond(q)) {
        if (!in_diamond(q, kClampTol))
            throw OutOfDiamondError("point outside the correlation diamond");
        // project the offending sums back onto the boundary
        double s = q.x + q.y, d = q.x - q.y;
        s = std::clamp(s, -1.0, 1.0);
        d = std::clamp(d, -1.0, 1.0);
        q = {(s + d) / 2.0, (s - d) / 2.0};
    }
    return Correlation((1.0 + q.x + q.y) / 2.0, (1.0 - q.x - q.y) / 2.0,
                       (1.0 + q.x - q.y) / 2.0, (1.0 - q.x + q.y) / 2.0);
}

Correlation from_counts(double n11, double n21, double n12, double n22) {
    for (double v : {n11, n21, n12, n22})
        if (v < 0.0) throw OutOfRangeError("counts must be non-negative");
    const double r1 = n11 + n21;
    const double r2 = n12 + n22;
    if (r1 <= 0.0 || r2 <= 0.0) throw EmptyRowError("empty count row");
    const double p11 = n11 / r1;
    const double p12 = n12 / r2;
    return Correlation(p11, 1.0 - p11, p12, 1.0 - p12);
}

}  // namespace ddchan
