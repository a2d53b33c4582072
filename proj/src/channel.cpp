#include "ddchan/channel.hpp"

#include <algorithm>
#include <cmath>

namespace ddchan {

ChoiMatrix choi_diag(const Vec3& d, const Vec3& c) {
    using cplx = std::complex<double>;
    const double d1 = d.x, d2 = d.y, d3 = d.z;
    const cplx ct(c.x, -c.y);  // c1 - i c2
    ChoiMatrix r;
    r(0, 0) = 1.0 + c.z + d3;
    r(0, 1) = ct;
    r(0, 3) = d1 + d2;
    r(1, 0) = std::conj(ct);
    r(1, 1) = 1.0 - c.z - d3;
    r(1, 2) = d1 - d2;
    r(2, 1) = d1 - d2;
    r(2, 2) = 1.0 + c.z - d3;
    r(2, 3) = ct;
    r(3, 0) = d1 + d2;
    r(3, 2) = std::conj(ct);
    r(3, 3) = 1.0 - c.z + d3;
    return r;
}

ChoiMatrix choi(const CanonicalChannel& ch) {
    return choi_diag({ch.d1, ch.d2, ch.d3}, {0.0, 0.0, ch.c3});
}

bool is_completely_positive(const CanonicalChannel& ch, double tol) {
    const double lhs1 =
        ch.d3 + std::sqrt((ch.d1 - ch.d2) * (ch.d1 - ch.d2) + ch.c3 * ch.c3);
    const double lhs2 =
        -ch.d3 + std::sqrt((ch.d1 + ch.d2) * (ch.d1 + ch.d2) + ch.c3 * ch.c3);
    return lhs1 <= 1.0 + tol && lhs2 <= 1.0 + tol;
}

bool is_completely_positive(const QubitChannel& ch, double tol) {
    // Diagonalize first; CP is invariant under the framing rotations. The
    // transverse translation components are kept, so this is exact for any
    // affine channel, not only dihedral ones.
    Svd3 svd = svd3(ch.A);
    Vec3 c = svd.u.transpose() * ch.b;
    ChoiMatrix r = choi_diag(svd.s, c);
    // Embed the Hermitian 4x4 as a real symmetric 8x8 and check the minimum
    // eigenvalue: eig([Re, -Im; Im, Re]) doubles the Hermitian spectrum.
    std::array<std::array<double, 8>, 8> h{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            h[i][j] = r(i, j).real();
            h[i + 4][j + 4] = r(i, j).real();
            h[i + 4][j] = r(i, j).imag();
            h[i][j + 4] = -r(i, j).imag();
        }
    std::array<double, 8> w{};
    std::array<std::array<double, 8>, 8> q{};
    jacobi_eig_sym<8>(h, w, q);
    return w[7] >= -tol;
}

Interval d1_feasible_interval(double d2, double d3, double c3) {
    if (d2 < 0.0 || d3 < 0.0 || c3 < 0.0)
        throw OutOfRangeError("d1_feasible_interval expects non-negative parameters");
    const double one_minus = 1.0 - d3;
    if (one_minus < 0.0 || one_minus * one_minus < c3 * c3) return Interval::none();
    const double t2 = (1.0 + d3) * (1.0 + d3) - c3 * c3;
    if (t2 < 0.0) return Interval::none();
    const double s = std::sqrt(one_minus * one_minus - c3 * c3);
    const double t = std::sqrt(t2);
    const double lo = std::max(0.0, d2 - s);
    const double hi = std::min(d2, t - d2);
    return Interval::of(lo, hi);
}

Vec3 apply(const QubitChannel& ch, const Vec3& v) { return ch.A * v + ch.b; }

BlochVector apply(const QubitChannel& ch, const BlochVector& v) {
    Vec3 out = apply(ch, v.vec());
    // CP channels keep the ball invariant; trim float dust so the result
    // constructs cleanly.
    double n = out.norm();
    if (n > 1.0 && n <= 1.0 + 1e-9) out = out * (1.0 / n);
    return BlochVector(out);
}

CanonicalChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw OutOfRangeError("amplitude damping parameter must lie in [0, 1]");
    const double root = std::sqrt(1.0 - gamma);
    return {root, root, 1.0 - gamma, gamma};
}

CanonicalChannel pauli_channel(const std::array<double, 4>& p) {
    double sum = 0.0;
    for (double v : p) {
        if (v < -1e-12) throw OutOfRangeError("Pauli probabilities must be non-negative");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw OutOfRangeError("Pauli probabilities must sum to 1");
    const double l1 = p[0] + p[1] - p[2] - p[3];
    const double l2 = p[0] - p[1] + p[2] - p[3];
    const double l3 = p[0] - p[1] - p[2] + p[3];
    // canonical ordering: singular values, smallest on the translation axis
    double s1 = std::fabs(l1), s2 = std::fabs(l2), s3 = std::fabs(l3);
    double lo = std::min({s1, s2, s3});
    double hi = std::max({s1, s2, s3});
    double mid = s1 + s2 + s3 - lo - hi;
    return {mid, hi, lo, 0.0};
}

QubitChannel to_affine(const CanonicalChannel& ch) {
    return {Mat3::diag(ch.d1, ch.d2, ch.d3), Vec3{0.0, 0.0, ch.c3}};
}

namespace {

// Rotate the columns of a singular-subspace group so the projection of c onto
// that subspace lands on a single basis vector. U and V are co-rotated, which
// leaves A = V diag U^T unchanged because the group's singular values are
// equal.
void align_group(Mat3& v_frame, Mat3& u_frame, Vec3& c,
                 const int* idx, int count, double null_tol) {
    if (count < 2) return;
    double norm2 = 0.0;
    for (int g = 0; g < count; ++g) norm2 += c[idx[g]] * c[idx[g]];
    const double norm = std::sqrt(norm2);
    if (norm <= null_tol) return;

    // Build an orthonormal basis of the group whose first vector is c_g/|c_g|
    // (coordinates within the group).
    double e0[3] = {0, 0, 0};
    for (int g = 0; g < count; ++g) e0[g] = c[idx[g]] / norm;
    double basis[3][3] = {{e0[0], e0[1], e0[2]}, {0, 0, 0}, {0, 0, 0}};
    int built = 1;
    for (int cand = 0; cand < count && built < count; ++cand) {
        double t[3] = {0, 0, 0};
        t[cand] = 1.0;
        for (int bi = 0; bi < built; ++bi) {
            double dot = 0.0;
            for (int g = 0; g < count; ++g) dot += basis[bi][g] * t[g];
            for (int g = 0; g < count; ++g) t[g] -= dot * basis[bi][g];
        }
        double tn = 0.0;
        for (int g = 0; g < count; ++g) tn += t[g] * t[g];
        tn = std::sqrt(tn);
        if (tn > 1e-9) {
            for (int g = 0; g < count; ++g) basis[built][g] = t[g] / tn;
            ++built;
        }
    }

    // Apply R (columns = basis vectors) to the group's columns of both frames.
    Mat3 v_old = v_frame, u_old = u_frame;
    for (int newcol = 0; newcol < count; ++newcol) {
        Vec3 vc{0, 0, 0}, uc{0, 0, 0};
        for (int g = 0; g < count; ++g) {
            vc = vc + v_old.col(idx[g]) * basis[newcol][g];
            uc = uc + u_old.col(idx[g]) * basis[newcol][g];
        }
        v_frame.set_col(idx[newcol], vc);
        u_frame.set_col(idx[newcol], uc);
    }
    c[idx[0]] = norm;
    for (int g = 1; g < count; ++g) c[idx[g]] = 0.0;
}

}  // namespace

Canonicalization canonicalize(const QubitChannel& ch, double null_tol, C3Mode mode) {
    Svd3 svd = svd3(ch.A);
    // frame roles: A = V D U^T with V = svd.u, U = svd.v
    Mat3 v_frame = svd.u;
    Mat3 u_frame = svd.v;
    Vec3 d = svd.s;           // descending
    Vec3 c = v_frame.transpose() * ch.b;

    // Within repeated singular subspaces the SVD basis is arbitrary; align it
    // with b so the transverse residual is minimal and reproducible.
    for (int start = 0; start < 3;) {
        int idx[3];
        int count = 0;
        idx[count++] = start;
        int stop = start + 1;
        while (stop < 3 && std::fabs(d[stop] - d[start]) <= null_tol) {
            idx[count++] = stop;
            ++stop;
        }
        align_group(v_frame, u_frame, c, idx, count, null_tol);
        start = stop;
    }

    const double bnorm = ch.b.norm();
    bool degenerate = false;
    int axis;
    if (bnorm > null_tol) {
        axis = 0;
        for (int j = 1; j < 3; ++j)
            if (std::fabs(c[j]) >= std::fabs(c[axis])) axis = j;
    } else {
        // no translation direction: put the smallest singular value on the
        // third axis; flag the fully symmetric case
        axis = 2;  // d sorted descending, so index 2 is smallest
        degenerate = std::fabs(d[0] - d[2]) <= null_tol;
    }

    int rest[2], nr = 0;
    for (int j = 0; j < 3; ++j)
        if (j != axis) rest[nr++] = j;
    // d2 >= d1 among the remaining axes
    int i2 = d[rest[0]] >= d[rest[1]] ? rest[0] : rest[1];
    int i1 = rest[0] == i2 ? rest[1] : rest[0];

    CanonicalChannel canon;
    canon.d1 = d[i1];
    canon.d2 = d[i2];
    canon.d3 = d[axis];
    const double c3_raw = c[axis];
    double residual2 = 0.0;
    for (int j = 0; j < 3; ++j)
        if (j != axis) residual2 += c[j] * c[j];
    canon.c3 = mode == C3Mode::VectorNorm ? c.norm() : std::fabs(c3_raw);

    // Reorder frames to (d1-axis, d2-axis, d3-axis) and fix the c3 sign by
    // flipping the third axis in both frames if needed.
    Mat3 v_out, u_out;
    const int order[3] = {i1, i2, axis};
    for (int j = 0; j < 3; ++j) {
        v_out.set_col(j, v_frame.col(order[j]));
        u_out.set_col(j, u_frame.col(order[j]));
    }
    if (c3_raw < 0.0) {
        v_out.set_col(2, -v_out.col(2));
        u_out.set_col(2, -u_out.col(2));
    }

    return {canon, v_out, u_out, std::sqrt(residual2), degenerate};
}

}  // namespace ddchan
