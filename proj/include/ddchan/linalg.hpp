#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Small fixed-size linear algebra for Bloch-space computations. All types are
// plain value types; nothing here allocates.

namespace ddchan {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? Vec3{x / n, y / n, z / n} : Vec3{0.0, 0.0, 0.0};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Mat3 {
    // row-major
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity() {
        Mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }
    static Mat3 diag(double a, double b, double c) {
        Mat3 r;
        r.m[0][0] = a;
        r.m[1][1] = b;
        r.m[2][2] = c;
        return r;
    }

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Vec3 col(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
    void set_col(int j, const Vec3& v) {
        m[0][j] = v.x;
        m[1][j] = v.y;
        m[2][j] = v.z;
    }

    double det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

// Cyclic Jacobi eigen-decomposition of a symmetric matrix, a = q diag(w) q^T.
// Deterministic; eigenvalues returned in descending order.
template <std::size_t N>
void jacobi_eig_sym(const std::array<std::array<double, N>, N>& a_in,
                    std::array<double, N>& w,
                    std::array<std::array<double, N>, N>& q) {
    std::array<std::array<double, N>, N> a = a_in;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) q[i][j] = (i == j) ? 1.0 : 0.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t r = p + 1; r < N; ++r) {
                if (std::fabs(a[p][r]) < 1e-300) continue;
                double theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    double akp = a[k][p], akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double apk = a[p][k], ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double qkp = q[k][p], qkr = q[k][r];
                    q[k][p] = c * qkp - s * qkr;
                    q[k][r] = s * qkp + c * qkr;
                }
            }
        }
    }
    for (std::size_t i = 0; i < N; ++i) w[i] = a[i][i];

    // sort descending, keeping columns in step
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < N; ++j)
            if (w[j] > w[best]) best = j;
        if (best != i) {
            std::swap(w[i], w[best]);
            for (std::size_t k = 0; k < N; ++k) std::swap(q[k][i], q[k][best]);
        }
    }
}

struct Svd3 {
    Mat3 u;   // left singular vectors (columns)
    Vec3 s;   // singular values, descending, >= 0
    Mat3 v;   // right singular vectors (columns); a = u * diag(s) * v^T
};

// 3x3 SVD via eigen-decomposition of a^T a; singular values are always
// non-negative and descending. u columns for null singular values are
// completed orthogonally, so u and v are orthogonal for any input.
Svd3 svd3(const Mat3& a);

}  // namespace ddchan
