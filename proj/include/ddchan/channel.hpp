#pragma once

#include <array>
#include <complex>
#include <optional>

#include "ddchan/errors.hpp"
#include "ddchan/linalg.hpp"

// Qubit states and channels in Bloch form. A channel acts on Bloch vectors as
// v -> A v + b; dihedrally-covariant channels reduce to the canonical
// parameters (d1, d2, d3, c3) after diagonalizing A and aligning b with an
// axis of the image ellipsoid.

namespace ddchan {

inline constexpr double kStateNormTol = 1e-12;
inline constexpr double kCpTolDefault = 1e-9;
inline constexpr double kNullTolDefault = 1e-9;

class BlochVector {
  public:
    explicit BlochVector(const Vec3& v) : v_(v) {
        if (v.norm() > 1.0 + kStateNormTol)
            throw OutOfRangeError("Bloch vector norm exceeds 1");
    }
    BlochVector(double x, double y, double z) : BlochVector(Vec3{x, y, z}) {}

    const Vec3& vec() const { return v_; }

  private:
    Vec3 v_;
};

struct QubitChannel {
    Mat3 A;
    Vec3 b;
};

// Reduced parameters of a dihedrally-covariant channel. Normal form:
// 0 <= d1 <= d2, d3 >= 0, c3 >= 0.
struct CanonicalChannel {
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, c3 = 0.0;
};

struct ChoiMatrix {
    std::array<std::array<std::complex<double>, 4>, 4> r{};

    std::complex<double>& operator()(int i, int j) { return r[i][j]; }
    std::complex<double> operator()(int i, int j) const { return r[i][j]; }
    double trace_real() const {
        return r[0][0].real() + r[1][1].real() + r[2][2].real() + r[3][3].real();
    }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    static Interval of(double lo, double hi) { return {lo, hi, lo > hi}; }
    static Interval none() { return {0.0, 0.0, true}; }
};

enum class C3Mode {
    ZeroTransverse,  // drop the residual transverse components (c1, c2)
    VectorNorm,      // c3 = |b|_2
};

struct Canonicalization {
    CanonicalChannel channel;
    Mat3 output_frame;   // V: columns are output axes, A = V diag Ut
    Mat3 input_frame;    // U
    double residual = 0.0;  // sqrt(c1^2 + c2^2) discarded by the projection
    bool degenerate = false;  // |b| ~ 0 with all singular values equal
};

ChoiMatrix choi(const CanonicalChannel& ch);
// Diagonal channel with a general translation vector (c1, c2, c3).
ChoiMatrix choi_diag(const Vec3& d, const Vec3& c);

bool is_completely_positive(const CanonicalChannel& ch, double tol = kCpTolDefault);
// Full check for an arbitrary affine channel, via its canonical frame.
bool is_completely_positive(const QubitChannel& ch, double tol = kCpTolDefault);

// The set of d1 values completing (d2, d3, c3) to a CP channel; empty means
// no completion exists.
Interval d1_feasible_interval(double d2, double d3, double c3);

Canonicalization canonicalize(const QubitChannel& ch,
                              double null_tol = kNullTolDefault,
                              C3Mode mode = C3Mode::ZeroTransverse);

Vec3 apply(const QubitChannel& ch, const Vec3& v);
BlochVector apply(const QubitChannel& ch, const BlochVector& v);

CanonicalChannel amplitude_damping(double gamma);
CanonicalChannel pauli_channel(const std::array<double, 4>& probs);

QubitChannel to_affine(const CanonicalChannel& ch);

}  // namespace ddchan
