#include "doctest.h"

#include <cmath>

#include "ddchan/linalg.hpp"
#include "ddchan/rng.hpp"

using namespace ddchan;

namespace {

Mat3 random_rotation(rng::Stream& s) {
    // QR-free: normalize a random frame built from gaussian-ish directions
    auto rand_vec = [&] {
        return Vec3{s.next_uniform(-1, 1), s.next_uniform(-1, 1), s.next_uniform(-1, 1)};
    };
    Vec3 a = rand_vec().normalized();
    while (a.norm() < 0.5) a = rand_vec().normalized();
    Vec3 b = a.cross(rand_vec());
    while (b.norm() < 1e-6) b = a.cross(rand_vec());
    b = b.normalized();
    Vec3 c = a.cross(b);
    Mat3 r;
    r.set_col(0, a);
    r.set_col(1, b);
    r.set_col(2, c);
    return r;
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

Mat3 reconstruct(const Svd3& s) {
    return s.u * Mat3::diag(s.s.x, s.s.y, s.s.z) * s.v.transpose();
}

bool orthogonal(const Mat3& m) {
    return max_abs_diff(m.transpose() * m, Mat3::identity()) < 1e-9;
}

}  // namespace

TEST_CASE("svd3 reconstructs random matrices") {
    rng::Stream s(rng::stream_key(11));
    for (int trial = 0; trial < 200; ++trial) {
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = s.next_uniform(-1, 1);
        const Svd3 svd = svd3(a);
        CHECK(max_abs_diff(reconstruct(svd), a) < 1e-9);
        CHECK(orthogonal(svd.u));
        CHECK(orthogonal(svd.v));
        CHECK(svd.s.x >= svd.s.y);
        CHECK(svd.s.y >= svd.s.z);
        CHECK(svd.s.z >= 0.0);
    }
}

TEST_CASE("svd3 handles rank-deficient input") {
    SUBCASE("zero matrix") {
        const Svd3 svd = svd3(Mat3{});
        CHECK(svd.s.x == 0.0);
        CHECK(orthogonal(svd.u));
        CHECK(orthogonal(svd.v));
    }
    SUBCASE("rank one") {
        Mat3 a;
        a(0, 0) = 2.0;  // only one nonzero column
        const Svd3 svd = svd3(a);
        CHECK(svd.s.x == doctest::Approx(2.0));
        CHECK(svd.s.y == doctest::Approx(0.0));
        CHECK(max_abs_diff(reconstruct(svd), a) < 1e-9);
        CHECK(orthogonal(svd.u));
    }
    SUBCASE("diagonal with repeats") {
        const Svd3 svd = svd3(Mat3::diag(0.5, 0.5, 0.2));
        CHECK(svd.s.x == doctest::Approx(0.5));
        CHECK(svd.s.y == doctest::Approx(0.5));
        CHECK(svd.s.z == doctest::Approx(0.2));
    }
}

TEST_CASE("jacobi eigensolver on symmetric 4x4") {
    std::array<std::array<double, 4>, 4> a{};
    rng::Stream s(rng::stream_key(12));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) a[i][j] = a[j][i] = s.next_uniform(-1, 1);
    std::array<double, 4> w{};
    std::array<std::array<double, 4>, 4> q{};
    jacobi_eig_sym<4>(a, w, q);
    // residual a q = q diag(w)
    for (int col = 0; col < 4; ++col) {
        for (int i = 0; i < 4; ++i) {
            double lhs = 0.0;
            for (int k = 0; k < 4; ++k) lhs += a[i][k] * q[k][col];
            CHECK(lhs == doctest::Approx(w[col] * q[i][col]).epsilon(1e-9));
        }
    }
    CHECK(w[0] >= w[1]);
    CHECK(w[1] >= w[2]);
    CHECK(w[2] >= w[3]);
}

TEST_CASE("svd3 singular values invariant under rotations") {
    rng::Stream s(rng::stream_key(13));
    const Mat3 base = Mat3::diag(0.9, 0.4, 0.1);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat3 r1 = random_rotation(s);
        const Mat3 r2 = random_rotation(s);
        const Svd3 svd = svd3(r1 * base * r2);
        CHECK(svd.s.x == doctest::Approx(0.9).epsilon(1e-9));
        CHECK(svd.s.y == doctest::Approx(0.4).epsilon(1e-9));
        CHECK(svd.s.z == doctest::Approx(0.1).epsilon(1e-9));
    }
}
