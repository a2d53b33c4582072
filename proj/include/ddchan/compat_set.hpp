#pragma once

#include <optional>
#include <vector>

#include "ddchan/channel.hpp"
#include "ddchan/correlation.hpp"
#include "ddchan/kernels.hpp"

// The compatible set S(C) of a dihedrally-covariant channel: every binary
// conditional distribution reachable through C by some encoding pair and
// binary measurement. Geometrically, the convex hull of (+-1, 0) with the
// intersection of an ellipse and the strip |x| <= c3:
//
//   Q = diag(0, 1/d3^2)                              if d2 <= d3
//   Q = diag((d2^2 - d3^2)/(d2^2 c3^2), 1/d2^2)      if d2 >  d3
//
// The hull either turns at the strip corner (c3, d3) or leaves the ellipse
// tangentially inside the strip; which one happens is governed by
// mu = (1 - c3)/c3 * (d2^2 - d3^2)/d3^2 (corner iff mu <= 1).

namespace ddchan {

enum class SetKind {
    RectangleLike,   // d2 <= d3: flat top y = d3 over the strip
    EllipseCorner,   // d2 > d3, hull segment starts at the corner (c3, d3)
    EllipseTangent,  // d2 > d3, hull segment is tangent inside the strip
    Segment,         // c3 = 0: strip collapses to {0} x [-m, m]
};

struct CompatibleSet {
    double d2 = 0.0, d3 = 0.0, c3 = 0.0;
    double q_xx = 0.0, q_yy = 0.0;
    SetKind kind = SetKind::Segment;
    XYPoint corner{0.0, 0.0};  // (x_s, y_s): corner or tangency point
    double apex = 0.0;         // boundary height at x = 0
    kernels::SetProfile profile;
};

struct WitnessEvaluation {
    double omega = 0.0;      // maximizing witness parameter
    double lambda = 0.0;     // lambda(omega | C)
    double threshold = 0.0;  // t(omega | C) = (1 + lambda)/2
    double violation = 0.0;  // f(omega) = y + omega x - lambda(omega)
};

CompatibleSet build(const CanonicalChannel& ch, double cp_tol = kCpTolDefault);

// Upper boundary of the strip region at |x| <= c3. Throws OutsideStrip beyond
// the strip.
double boundary_y(double x, const CanonicalChannel& ch, double tol = 1e-12);

// Regime function; undefined (nullopt) when c3 = 0 or d3 = 0.
std::optional<double> mu(const CanonicalChannel& ch);

bool contains(const CompatibleSet& s, const XYPoint& pt, double tol = 1e-9);

// Maximum image length max_{|v|<=1} |D v + omega c|; the two branches meet
// smoothly at omega0 = (d2^2 - d3^2)/(d3 c3).
double lambda_omega(double omega, const CanonicalChannel& ch);
double witness_threshold(double omega, const CanonicalChannel& ch);

// Maximizes f(omega) = y + omega x - lambda(omega) over omega >= 0 for a
// symmetrized point inside the strip. Beyond the strip the supremum is
// unbounded and UnboundedViolation is thrown.
WitnessEvaluation witness_max_violation(const XYPoint& pt, const CanonicalChannel& ch,
                                        double strip_tol = 1e-12);

// Encoder/decoder Bloch vectors achieving the boundary point at abscissa x,
// |x| <= c3 (closed strip).
Vec3 optimal_encoding(double x, const CanonicalChannel& ch);
Vec3 optimal_decoding(double x, const CanonicalChannel& ch);

// Closed-form Euclidean area of S.
double area(const CompatibleSet& s);

// Inscribed convex polygon, counter-clockwise, containing (+-1, 0) and the
// corner/tangency points exactly, with arc samples equally spaced in the
// ellipse parameter. Degenerate sets return their extreme points regardless
// of n.
std::vector<XYPoint> polygon_of(const CompatibleSet& s, int n);

// Supplemental equivalence classes: channels whose compatible sets coincide.
bool indistinguishable(const CanonicalChannel& a, const CanonicalChannel& b,
                       double tol = 1e-9);

}  // namespace ddchan
