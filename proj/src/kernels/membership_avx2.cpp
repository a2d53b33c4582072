#if defined(DDCHAN_HAVE_AVX2)

#include <immintrin.h>

#include "ddchan/kernels.hpp"

// AVX2 variants. Operation order mirrors the scalar reference exactly and no
// FMA is used on the decision path, so lane results are bit-identical to the
// scalar kernel (all ops involved are correctly rounded).

namespace ddchan::kernels {

namespace {

struct MaskState {
    __m256d abs_mask;
    __m256d sel_x, b_y, r, inv_w, line_a, line_b, line_rhs, tol, one, zero;
};

inline MaskState load_state(const SetProfile& p, double tol) {
    MaskState s;
    s.abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    s.sel_x = _mm256_set1_pd(p.sel_x);
    s.b_y = _mm256_set1_pd(p.b_y);
    s.r = _mm256_set1_pd(p.r);
    s.inv_w = _mm256_set1_pd(p.inv_w);
    s.line_a = _mm256_set1_pd(p.line_a);
    s.line_b = _mm256_set1_pd(p.line_b);
    s.line_rhs = _mm256_set1_pd(p.line_c + p.line_b * tol);
    s.tol = _mm256_set1_pd(tol);
    s.one = _mm256_set1_pd(1.0);
    s.zero = _mm256_setzero_pd();
    return s;
}

inline __m256d inside_mask(const MaskState& s, __m256d x, __m256d y) {
    const __m256d xa = _mm256_and_pd(x, s.abs_mask);
    const __m256d ya = _mm256_and_pd(y, s.abs_mask);
    const __m256d u = _mm256_mul_pd(xa, s.inv_w);
    __m256d t = _mm256_sub_pd(s.one, _mm256_mul_pd(s.r, _mm256_mul_pd(u, u)));
    t = _mm256_max_pd(t, s.zero);
    const __m256d bound =
        _mm256_add_pd(_mm256_mul_pd(s.b_y, _mm256_sqrt_pd(t)), s.tol);
    const __m256d quad_ok = _mm256_cmp_pd(ya, bound, _CMP_LE_OQ);
    const __m256d lhs =
        _mm256_add_pd(_mm256_mul_pd(s.line_a, xa), _mm256_mul_pd(s.line_b, ya));
    const __m256d line_ok = _mm256_cmp_pd(lhs, s.line_rhs, _CMP_LE_OQ);
    const __m256d sel = _mm256_cmp_pd(xa, s.sel_x, _CMP_LE_OQ);
    return _mm256_blendv_pd(line_ok, quad_ok, sel);
}

}  // namespace

std::size_t count_inside_avx2(const SetProfile& p, const double* xs,
                              const double* ys, std::size_t n, double tol) {
    const MaskState s = load_state(p, tol);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        const __m256d y = _mm256_loadu_pd(ys + i);
        const int bits = _mm256_movemask_pd(inside_mask(s, x, y));
        count += static_cast<std::size_t>(__builtin_popcount(bits));
    }
    if (i < n) count += count_inside_scalar(p, xs + i, ys + i, n - i, tol);
    return count;
}

void flags_inside_avx2(const SetProfile& p, const double* xs, const double* ys,
                       std::size_t n, double tol, std::uint8_t* out) {
    const MaskState s = load_state(p, tol);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        const __m256d y = _mm256_loadu_pd(ys + i);
        const int bits = _mm256_movemask_pd(inside_mask(s, x, y));
        out[i] = static_cast<std::uint8_t>(bits & 1);
        out[i + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
        out[i + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
        out[i + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
    }
    if (i < n) flags_inside_scalar(p, xs + i, ys + i, n - i, tol, out + i);
}

void born_map_avx2(const BornParams& ch, const double* vx, const double* vy,
                   const double* vz, const double* ux, const double* uy,
                   const double* uz, std::size_t n, double* xs, double* ys) {
    const __m256d d1 = _mm256_set1_pd(ch.d1);
    const __m256d d2 = _mm256_set1_pd(ch.d2);
    const __m256d d3 = _mm256_set1_pd(ch.d3);
    const __m256d c3 = _mm256_set1_pd(ch.c3);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d uzv = _mm256_loadu_pd(uz + i);
        _mm256_storeu_pd(xs + i, _mm256_mul_pd(c3, uzv));
        const __m256d a =
            _mm256_mul_pd(_mm256_loadu_pd(ux + i),
                          _mm256_mul_pd(d1, _mm256_loadu_pd(vx + i)));
        const __m256d b =
            _mm256_mul_pd(_mm256_loadu_pd(uy + i),
                          _mm256_mul_pd(d2, _mm256_loadu_pd(vy + i)));
        const __m256d c =
            _mm256_mul_pd(uzv, _mm256_mul_pd(d3, _mm256_loadu_pd(vz + i)));
        _mm256_storeu_pd(ys + i, _mm256_add_pd(_mm256_add_pd(a, b), c));
    }
    if (i < n)
        born_map_scalar(ch, vx + i, vy + i, vz + i, ux + i, uy + i, uz + i,
                        n - i, xs + i, ys + i);
}

}  // namespace ddchan::kernels

#endif  // DDCHAN_HAVE_AVX2
