#pragma once

#include <cstddef>
#include <cstdint>

// Batch evaluation kernels for the hot inner loops: point-in-compatible-set
// membership (drives the Monte Carlo area oracle) and the Born-rule map from
// encoder/decoder Bloch pairs to correlation coordinates.
//
// Each kernel has a scalar reference implementation and an AVX2 variant
// selected at runtime. The variants perform the same operations in the same
// order with no FMA contraction, so their results are bit-identical; the
// equivalence tests assert exactly that.

namespace ddchan::kernels {

// Reduced description of a compatible set, precomputed by compat_set::build.
// Membership of a symmetrized point (xa, ya):
//   xa <= sel_x : ya <= b_y * sqrt(max(0, 1 - r * (xa*inv_w)^2)) + tol
//   otherwise   : line_a*xa + line_b*ya <= line_c + line_b*tol
// sel_x is the corner/tangency abscissa (c3, or the tangency point when the
// hull line leaves the ellipse inside the strip); the degenerate zero-height
// set uses sel_x = -1 so every point takes the line test ya <= tol.
struct SetProfile {
    double sel_x = -1.0;
    double b_y = 0.0;    // boundary height at x = 0
    double r = 0.0;      // (d2^2 - d3^2)/d2^2 on the ellipse branch, else 0
    double inv_w = 0.0;  // 1/c3 on the ellipse branch, else 0
    double line_a = 0.0;
    double line_b = 1.0;
    double line_c = 0.0;
};

inline bool profile_contains(const SetProfile& p, double x, double y, double tol) {
    const double xa = x < 0.0 ? -x : x;
    const double ya = y < 0.0 ? -y : y;
    if (xa <= p.sel_x) {
        const double u = xa * p.inv_w;
        double t = 1.0 - p.r * (u * u);
        if (t < 0.0) t = 0.0;
        return ya <= p.b_y * __builtin_sqrt(t) + tol;
    }
    return p.line_a * xa + p.line_b * ya <= p.line_c + p.line_b * tol;
}

enum class Backend { Scalar, Avx2 };

bool avx2_available();
// Honors the DDCHAN_KERNEL environment variable ("scalar" or "avx2").
Backend active_backend();
const char* backend_name(Backend b);

// ---- membership ----
std::size_t count_inside(const SetProfile& p, const double* xs, const double* ys,
                         std::size_t n, double tol);
void flags_inside(const SetProfile& p, const double* xs, const double* ys,
                  std::size_t n, double tol, std::uint8_t* out);

std::size_t count_inside_scalar(const SetProfile& p, const double* xs,
                                const double* ys, std::size_t n, double tol);
void flags_inside_scalar(const SetProfile& p, const double* xs, const double* ys,
                         std::size_t n, double tol, std::uint8_t* out);
#if defined(DDCHAN_HAVE_AVX2)
std::size_t count_inside_avx2(const SetProfile& p, const double* xs,
                              const double* ys, std::size_t n, double tol);
void flags_inside_avx2(const SetProfile& p, const double* xs, const double* ys,
                       std::size_t n, double tol, std::uint8_t* out);
#endif

// ---- Born-rule map ----
// xs[i] = c3 * uz[i]
// ys[i] = ux[i]*(d1*vx[i]) + uy[i]*(d2*vy[i]) + uz[i]*(d3*vz[i])
struct BornParams {
    double d1, d2, d3, c3;
};

void born_map(const BornParams& ch, const double* vx, const double* vy,
              const double* vz, const double* ux, const double* uy,
              const double* uz, std::size_t n, double* xs, double* ys);
void born_map_scalar(const BornParams& ch, const double* vx, const double* vy,
                     const double* vz, const double* ux, const double* uy,
                     const double* uz, std::size_t n, double* xs, double* ys);
#if defined(DDCHAN_HAVE_AVX2)
void born_map_avx2(const BornParams& ch, const double* vx, const double* vy,
                   const double* vz, const double* ux, const double* uy,
                   const double* uz, std::size_t n, double* xs, double* ys);
#endif

// Monte Carlo area of a compatible set: uniform samples over the correlation
// diamond (area 2), counted through the dispatched membership kernel. The
// point stream is a pure function of (seed, index).
double monte_carlo_area(const SetProfile& p, std::size_t samples,
                        std::uint64_t seed, double tol = 0.0);

}  // namespace ddchan::kernels
