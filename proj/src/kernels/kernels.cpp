#include "ddchan/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

#include "ddchan/rng.hpp"

namespace ddchan::kernels {

std::size_t count_inside_scalar(const SetProfile& p, const double* xs,
                                const double* ys, std::size_t n, double tol) {
    const double line_rhs = p.line_c + p.line_b * tol;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xa = xs[i] < 0.0 ? -xs[i] : xs[i];
        const double ya = ys[i] < 0.0 ? -ys[i] : ys[i];
        const double u = xa * p.inv_w;
        double t = 1.0 - p.r * (u * u);
        if (t < 0.0) t = 0.0;
        const double bound = p.b_y * __builtin_sqrt(t) + tol;
        const bool quad_ok = ya <= bound;
        const bool line_ok = p.line_a * xa + p.line_b * ya <= line_rhs;
        count += (xa <= p.sel_x) ? quad_ok : line_ok;
    }
    return count;
}

void flags_inside_scalar(const SetProfile& p, const double* xs, const double* ys,
                         std::size_t n, double tol, std::uint8_t* out) {
    const double line_rhs = p.line_c + p.line_b * tol;
    for (std::size_t i = 0; i < n; ++i) {
        const double xa = xs[i] < 0.0 ? -xs[i] : xs[i];
        const double ya = ys[i] < 0.0 ? -ys[i] : ys[i];
        const double u = xa * p.inv_w;
        double t = 1.0 - p.r * (u * u);
        if (t < 0.0) t = 0.0;
        const double bound = p.b_y * __builtin_sqrt(t) + tol;
        const bool quad_ok = ya <= bound;
        const bool line_ok = p.line_a * xa + p.line_b * ya <= line_rhs;
        out[i] = (xa <= p.sel_x) ? quad_ok : line_ok;
    }
}

void born_map_scalar(const BornParams& ch, const double* vx, const double* vy,
                     const double* vz, const double* ux, const double* uy,
                     const double* uz, std::size_t n, double* xs, double* ys) {
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = ch.c3 * uz[i];
        const double a = ux[i] * (ch.d1 * vx[i]);
        const double b = uy[i] * (ch.d2 * vy[i]);
        const double c = uz[i] * (ch.d3 * vz[i]);
        ys[i] = (a + b) + c;
    }
}

bool avx2_available() {
#if defined(DDCHAN_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend() {
    static Backend backend = [] {
        const char* env = std::getenv("DDCHAN_KERNEL");
        if (env != nullptr) {
            if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
            if (std::strcmp(env, "avx2") == 0 && avx2_available())
                return Backend::Avx2;
            return Backend::Scalar;
        }
        return avx2_available() ? Backend::Avx2 : Backend::Scalar;
    }();
    return backend;
}

const char* backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

std::size_t count_inside(const SetProfile& p, const double* xs, const double* ys,
                         std::size_t n, double tol) {
#if defined(DDCHAN_HAVE_AVX2)
    if (active_backend() == Backend::Avx2)
        return count_inside_avx2(p, xs, ys, n, tol);
#endif
    return count_inside_scalar(p, xs, ys, n, tol);
}

void flags_inside(const SetProfile& p, const double* xs, const double* ys,
                  std::size_t n, double tol, std::uint8_t* out) {
#if defined(DDCHAN_HAVE_AVX2)
    if (active_backend() == Backend::Avx2) {
        flags_inside_avx2(p, xs, ys, n, tol, out);
        return;
    }
#endif
    flags_inside_scalar(p, xs, ys, n, tol, out);
}

void born_map(const BornParams& ch, const double* vx, const double* vy,
              const double* vz, const double* ux, const double* uy,
              const double* uz, std::size_t n, double* xs, double* ys) {
#if defined(DDCHAN_HAVE_AVX2)
    if (active_backend() == Backend::Avx2) {
        born_map_avx2(ch, vx, vy, vz, ux, uy, uz, n, xs, ys);
        return;
    }
#endif
    born_map_scalar(ch, vx, vy, vz, ux, uy, uz, n, xs, ys);
}

double monte_carlo_area(const SetProfile& p, std::size_t samples,
                        std::uint64_t seed, double tol) {
    constexpr std::size_t kBlock = 8192;
    std::vector<double> bx(kBlock), by(kBlock);
    const std::uint64_t key = rng::stream_key(seed, 0x6d63 /* "mc" */);
    std::size_t inside = 0;
    std::size_t done = 0;
    while (done < samples) {
        const std::size_t m = std::min(kBlock, samples - done);
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint64_t idx = 2 * (done + i);
            // (x+y, x-y) uniform on [-1,1]^2 makes (x,y) uniform on the diamond
            const double s = 2.0 * rng::uniform01(key, idx) - 1.0;
            const double d = 2.0 * rng::uniform01(key, idx + 1) - 1.0;
            bx[i] = (s + d) * 0.5;
            by[i] = (s - d) * 0.5;
        }
        inside += count_inside(p, bx.data(), by.data(), m, tol);
        done += m;
    }
    return 2.0 * static_cast<double>(inside) / static_cast<double>(samples);
}

}  // namespace ddchan::kernels
