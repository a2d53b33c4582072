#include "ddchan/linalg.hpp"

namespace ddchan {

Svd3 svd3(const Mat3& a) {
    Mat3 ata = a.transpose() * a;
    std::array<std::array<double, 3>, 3> sym = ata.m;
    std::array<double, 3> w{};
    std::array<std::array<double, 3>, 3> qm{};
    jacobi_eig_sym<3>(sym, w, qm);

    Svd3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.v.m[i][j] = qm[i][j];
    for (int j = 0; j < 3; ++j) out.s[j] = std::sqrt(std::max(0.0, w[j]));

    // u_j = a v_j / s_j; null columns completed by cross products
    constexpr double kNull = 1e-13;
    bool have[3] = {false, false, false};
    for (int j = 0; j < 3; ++j) {
        if (out.s[j] > kNull) {
            out.u.set_col(j, (a * out.v.col(j)) * (1.0 / out.s[j]));
            have[j] = true;
        }
    }
    for (int j = 0; j < 3; ++j) {
        if (have[j]) continue;
        Vec3 c;
        int k0 = (j + 1) % 3, k1 = (j + 2) % 3;
        if (have[k0] && have[k1]) {
            c = out.u.col(k0).cross(out.u.col(k1));
        } else if (have[k0] || have[k1]) {
            Vec3 known = have[k0] ? out.u.col(k0) : out.u.col(k1);
            // any unit vector orthogonal to `known`, chosen deterministically
            Vec3 seed = std::fabs(known.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            c = known.cross(seed).normalized();
        } else {
            c = Vec3{j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, j == 2 ? 1.0 : 0.0};
        }
        out.u.set_col(j, c.normalized());
        have[j] = true;
    }
    // re-orthogonalize the filled columns against each other (pairs of null
    // columns from the branch above may not be mutually orthogonal)
    for (int j = 1; j < 3; ++j) {
        Vec3 cj = out.u.col(j);
        for (int k = 0; k < j; ++k) {
            Vec3 ck = out.u.col(k);
            cj = cj - ck * ck.dot(cj);
        }
        if (cj.norm() < 1e-12) {
            cj = out.u.col((j + 1) % 3).cross(out.u.col((j + 2) % 3));
        }
        out.u.set_col(j, cj.normalized());
    }
    return out;
}

}  // namespace ddchan
