#pragma once

#include <cmath>

#include "ddchan/errors.hpp"

// Binary conditional probability distributions p_{j|i} and their Cartesian
// coordinates: p = U + x X + y Y over the orthonormal basis
//   U = [[1,1],[1,1]]/2, X = [[1,-1],[1,-1]]/2, Y = [[1,-1],[-1,1]]/2,
// valid on the diamond |x+y| <= 1, |x-y| <= 1.

namespace ddchan {

struct XYPoint {
    double x = 0.0;
    double y = 0.0;
};

inline bool in_diamond(const XYPoint& p, double tol = 0.0) {
    return std::fabs(p.x + p.y) <= 1.0 + tol && std::fabs(p.x - p.y) <= 1.0 + tol;
}

class Correlation {
  public:
    // probabilities p_{j|i}; rows (fixed i) must sum to 1
    Correlation(double p11, double p21, double p12, double p22);

    double p11() const { return p11_; }
    double p21() const { return p21_; }
    double p12() const { return p12_; }
    double p22() const { return p22_; }

  private:
    double p11_, p21_, p12_, p22_;
};

XYPoint to_xy(const Correlation& p);

// Inverse of to_xy. Points outside the diamond by at most 1e-9 are clamped
// onto it; larger violations throw OutOfDiamond.
Correlation from_xy(const XYPoint& pt);

// Fold onto the positive quadrant; input/output relabelings act as sign flips
// on (x, y), so membership geometry only ever sees |x|, |y|.
inline XYPoint symmetrize(const XYPoint& pt) {
    return {std::fabs(pt.x), std::fabs(pt.y)};
}

// Row-normalized frequencies. Counts are real-valued so the exact-probability
// ("infinite shot") records reuse the same path; each row total must be > 0.
Correlation from_counts(double n11, double n21, double n12, double n22);

}  // namespace ddchan
