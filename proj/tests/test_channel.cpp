#include "doctest.h"

#include <cmath>

#include "ddchan/channel.hpp"
#include "ddchan/linalg.hpp"
#include "ddchan/rng.hpp"

using namespace ddchan;

namespace {

const double kSqrt2Inv = 1.0 / std::sqrt(2.0);

// Choi eigenvalue oracle: embed the Hermitian matrix as real symmetric 8x8.
double choi_min_eigenvalue(const ChoiMatrix& r) {
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
    return w[7];
}

Mat3 rotation_about(const Vec3& axis_in, double angle) {
    const Vec3 axis = axis_in.normalized();
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    const double x = axis.x, y = axis.y, z = axis.z;
    r(0, 0) = c + x * x * (1 - c);
    r(0, 1) = x * y * (1 - c) - z * s;
    r(0, 2) = x * z * (1 - c) + y * s;
    r(1, 0) = y * x * (1 - c) + z * s;
    r(1, 1) = c + y * y * (1 - c);
    r(1, 2) = y * z * (1 - c) - x * s;
    r(2, 0) = z * x * (1 - c) - y * s;
    r(2, 1) = z * y * (1 - c) + x * s;
    r(2, 2) = c + z * z * (1 - c);
    return r;
}

Mat3 random_rotation(rng::Stream& s) {
    Vec3 axis{s.next_uniform(-1, 1), s.next_uniform(-1, 1), s.next_uniform(-1, 1)};
    while (axis.norm() < 1e-3)
        axis = {s.next_uniform(-1, 1), s.next_uniform(-1, 1), s.next_uniform(-1, 1)};
    return rotation_about(axis, s.next_uniform(0, 6.283185307179586));
}

CanonicalChannel random_cp_channel(rng::Stream& s) {
    for (;;) {
        CanonicalChannel ch{s.next_uniform01(), s.next_uniform01(),
                            s.next_uniform01(), s.next_uniform01()};
        if (ch.d1 > ch.d2) std::swap(ch.d1, ch.d2);
        if (is_completely_positive(ch)) return ch;
    }
}

}  // namespace

TEST_CASE("choi matrix of reference channels") {
    SUBCASE("identity") {
        const ChoiMatrix r = choi({1.0, 1.0, 1.0, 0.0});
        const double expected[4][4] = {
            {2, 0, 0, 2}, {0, 0, 0, 0}, {0, 0, 0, 0}, {2, 0, 0, 2}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                CHECK(r(i, j).real() == doctest::Approx(expected[i][j]));
                CHECK(r(i, j).imag() == 0.0);
            }
    }
    SUBCASE("full depolarizer") {
        const ChoiMatrix r = choi({0.0, 0.0, 0.0, 0.0});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(r(i, j).real() == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    SUBCASE("amplitude damping 1/2") {
        const ChoiMatrix r = choi({kSqrt2Inv, kSqrt2Inv, 0.5, 0.5});
        CHECK(r(0, 0).real() == doctest::Approx(2.0));
        CHECK(r(0, 3).real() == doctest::Approx(std::sqrt(2.0)));
        CHECK(r(2, 2).real() == doctest::Approx(1.0));
        CHECK(r(1, 1).real() == doctest::Approx(0.0));
    }
    SUBCASE("hermitian with trace 4") {
        const ChoiMatrix r = choi({0.3, 0.5, 0.2, 0.4});
        CHECK(r.trace_real() == doctest::Approx(4.0));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(r(i, j) == std::conj(r(j, i)));
    }
}

TEST_CASE("complete positivity closed form") {
    CHECK(is_completely_positive(CanonicalChannel{1.0, 1.0, 1.0, 0.0}));
    // both constraints hold, the first exactly tight
    CHECK(is_completely_positive(CanonicalChannel{kSqrt2Inv, kSqrt2Inv, 0.5, 0.5}));
    CHECK_FALSE(is_completely_positive(CanonicalChannel{1.0, 1.0, 1.0, 0.1}));
}

TEST_CASE("closed-form CP agrees with the Choi eigenvalue sign") {
    rng::Stream s(rng::stream_key(21));
    int positives = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        CanonicalChannel ch{s.next_uniform01(), s.next_uniform01(),
                            s.next_uniform01(), s.next_uniform01()};
        if (ch.d1 > ch.d2) std::swap(ch.d1, ch.d2);
        const bool closed = is_completely_positive(ch, 1e-9);
        const bool eig = choi_min_eigenvalue(choi(ch)) >= -1e-9;
        CHECK(closed == eig);
        positives += closed;
    }
    CHECK(positives > 100);  // the sample actually exercises both outcomes
    CHECK(positives < 9900);
}

TEST_CASE("general-channel CP check agrees with the closed form") {
    rng::Stream s(rng::stream_key(25));
    int cp_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        CanonicalChannel ch{s.next_uniform01(), s.next_uniform01(),
                            s.next_uniform01(), s.next_uniform01()};
        if (ch.d1 > ch.d2) std::swap(ch.d1, ch.d2);
        const bool closed = is_completely_positive(ch, 1e-9);
        const bool general = is_completely_positive(to_affine(ch), 1e-9);
        CHECK(closed == general);
        cp_seen += closed;
    }
    CHECK(cp_seen > 10);
}

TEST_CASE("d1 feasible interval") {
    SUBCASE("reported reconstruction bounds") {
        const Interval iv = d1_feasible_interval(0.606, 0.437, 0.481);
        REQUIRE_FALSE(iv.empty);
        CHECK(iv.lo == doctest::Approx(0.313).epsilon(0.003));
        CHECK(iv.hi == doctest::Approx(0.606).epsilon(0.003));
    }
    SUBCASE("unique completion") {
        const Interval iv = d1_feasible_interval(kSqrt2Inv, 0.5, 0.5);
        REQUIRE_FALSE(iv.empty);
        CHECK(iv.lo == doctest::Approx(kSqrt2Inv));
        CHECK(iv.hi == doctest::Approx(kSqrt2Inv));
    }
    SUBCASE("no completion") {
        CHECK(d1_feasible_interval(1.0, 0.0, 0.5).empty);
        CHECK(d1_feasible_interval(0.5, 0.9, 0.3).empty);  // (1-d3)^2 < c3^2
    }
    SUBCASE("matches a CP scan over d1") {
        rng::Stream s(rng::stream_key(22));
        for (int trial = 0; trial < 50; ++trial) {
            const double d2 = s.next_uniform01();
            const double d3 = s.next_uniform01();
            const double c3 = s.next_uniform01();
            const Interval iv = d1_feasible_interval(d2, d3, c3);
            for (int g = 0; g <= 1000; ++g) {
                const double d1 = d2 * g / 1000.0;  // canonical range [0, d2]
                const bool cp = is_completely_positive(CanonicalChannel{d1, d2, d3, c3}, 0.0);
                const bool inside = !iv.empty && d1 >= iv.lo - 1e-12 && d1 <= iv.hi + 1e-12;
                if (cp != inside) {
                    // disagreement allowed only within float dust of the edges
                    const double edge = std::min(std::fabs(d1 - iv.lo), std::fabs(d1 - iv.hi));
                    CHECK(edge < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("canonicalize") {
    SUBCASE("reported tomography channel") {
        QubitChannel ch{Mat3::diag(0.573, 0.603, 0.430), {0.134, 0.0674, 0.508}};
        const Canonicalization c = canonicalize(ch);
        CHECK(c.channel.d1 == doctest::Approx(0.573));
        CHECK(c.channel.d2 == doctest::Approx(0.603));
        CHECK(c.channel.d3 == doctest::Approx(0.430));
        CHECK(c.channel.c3 == doctest::Approx(0.508));
        CHECK(c.residual == doctest::Approx(0.150).epsilon(0.01));
        CHECK_FALSE(c.degenerate);
    }
    SUBCASE("norm mode keeps |b|") {
        QubitChannel ch{Mat3::diag(0.573, 0.603, 0.430), {0.134, 0.0674, 0.508}};
        const Canonicalization c = canonicalize(ch, kNullTolDefault, C3Mode::VectorNorm);
        CHECK(c.channel.c3 ==
              doctest::Approx(Vec3{0.134, 0.0674, 0.508}.norm()));
    }
    SUBCASE("identity") {
        const Canonicalization c = canonicalize({Mat3::identity(), {0, 0, 0}});
        CHECK(c.channel.d1 == doctest::Approx(1.0));
        CHECK(c.channel.d2 == doctest::Approx(1.0));
        CHECK(c.channel.d3 == doctest::Approx(1.0));
        CHECK(c.channel.c3 == doctest::Approx(0.0));
        CHECK(c.residual == doctest::Approx(0.0));
        CHECK(c.degenerate);
    }
    SUBCASE("axis permutation follows b, not magnitude") {
        QubitChannel ch{Mat3::diag(0.5, 0.2, 0.7), {0.0, 0.3, 0.0}};
        const Canonicalization c = canonicalize(ch);
        CHECK(c.channel.d3 == doctest::Approx(0.2));
        CHECK(c.channel.c3 == doctest::Approx(0.3));
        CHECK(c.channel.d2 == doctest::Approx(0.7));
        CHECK(c.channel.d1 == doctest::Approx(0.5));
        // frames reconstruct A
        const Mat3 rebuilt = c.output_frame *
                             Mat3::diag(c.channel.d1, c.channel.d2, c.channel.d3) *
                             c.input_frame.transpose();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(rebuilt(i, j) == doctest::Approx(ch.A(i, j)).epsilon(1e-9));
    }
}

TEST_CASE("canonical parameters invariant under frame rotations") {
    rng::Stream s(rng::stream_key(23));
    for (int trial = 0; trial < 300; ++trial) {
        const CanonicalChannel base = random_cp_channel(s);
        const Mat3 r1 = random_rotation(s);
        const Mat3 r2 = random_rotation(s);
        const QubitChannel rotated{r1 * Mat3::diag(base.d1, base.d2, base.d3) * r2,
                                   r1 * Vec3{0.0, 0.0, base.c3}};
        const Canonicalization c = canonicalize(rotated);
        CHECK(c.channel.d1 == doctest::Approx(base.d1).epsilon(1e-9));
        CHECK(c.channel.d2 == doctest::Approx(base.d2).epsilon(1e-9));
        CHECK(c.channel.d3 == doctest::Approx(base.d3).epsilon(1e-9));
        CHECK(c.channel.c3 == doctest::Approx(base.c3).epsilon(1e-9));
        CHECK(c.residual < 1e-9);
    }
}

TEST_CASE("apply") {
    const QubitChannel identity{Mat3::identity(), {0, 0, 0}};
    const Vec3 up = apply(identity, Vec3{0, 0, 1});
    CHECK(up.z == doctest::Approx(1.0));

    const QubitChannel a12 = to_affine({kSqrt2Inv, kSqrt2Inv, 0.5, 0.5});
    const Vec3 south = apply(a12, Vec3{0, 0, -1});
    CHECK(south.norm() == doctest::Approx(0.0));

    const QubitChannel dep = to_affine({0, 0, 0, 0});
    const Vec3 anything = apply(dep, Vec3{0.3, -0.2, 0.4});
    CHECK(anything.norm() == doctest::Approx(0.0));
}

TEST_CASE("CP channels preserve the Bloch ball") {
    rng::Stream s(rng::stream_key(24));
    for (int trial = 0; trial < 10000; ++trial) {
        const CanonicalChannel ch = random_cp_channel(s);
        Vec3 v{s.next_uniform(-1, 1), s.next_uniform(-1, 1), s.next_uniform(-1, 1)};
        if (v.norm() > 1.0) v = v.normalized();
        CHECK(apply(to_affine(ch), v).norm() <= 1.0 + 1e-9);
    }
}

TEST_CASE("channel factories") {
    SUBCASE("amplitude damping") {
        const CanonicalChannel half = amplitude_damping(0.5);
        CHECK(half.d1 == doctest::Approx(kSqrt2Inv));
        CHECK(half.d2 == doctest::Approx(kSqrt2Inv));
        CHECK(half.d3 == doctest::Approx(0.5));
        CHECK(half.c3 == doctest::Approx(0.5));
        const CanonicalChannel none = amplitude_damping(0.0);
        CHECK(none.d1 == doctest::Approx(1.0));
        CHECK(none.c3 == doctest::Approx(0.0));
        CHECK_THROWS_AS(amplitude_damping(1.5), OutOfRangeError);
    }
    SUBCASE("pauli channel") {
        const CanonicalChannel id = pauli_channel({1.0, 0.0, 0.0, 0.0});
        CHECK(id.d1 == doctest::Approx(1.0));
        CHECK(id.d2 == doctest::Approx(1.0));
        CHECK(id.d3 == doctest::Approx(1.0));
        CHECK(id.c3 == 0.0);
        const CanonicalChannel flip = pauli_channel({0.5, 0.5, 0.0, 0.0});
        CHECK(flip.d2 == doctest::Approx(1.0));  // X survives
        CHECK(flip.c3 == 0.0);
        CHECK(is_completely_positive(flip));
        CHECK_THROWS_AS(pauli_channel({0.5, 0.6, 0.0, 0.0}), OutOfRangeError);
    }
}

TEST_CASE("bloch vector validation") {
    CHECK_NOTHROW(BlochVector(0.0, 0.0, 1.0));
    CHECK_THROWS_AS(BlochVector(1.0, 1.0, 1.0), OutOfRangeError);
}
