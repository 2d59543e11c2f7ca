// AVX2+FMA backend. Compiled with -mavx2 -mfma (see src/CMakeLists.txt) and
// only ever dispatched to after a cpuid check. Lanes replicate the scalar
// reference op-for-op; tails fall back to the same scalar expressions, so the
// whole array is bit-identical to the scalar backend.

#include "steiner/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <cmath>
#include <immintrin.h>

namespace steiner::kernels {
namespace {

void v_fill(double* dst, double value, std::size_t n) {
    const __m256d vv = _mm256_set1_pd(value);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, vv);
    for (; i < n; ++i) dst[i] = value;
}

void v_sub_scale(double* dst, const double* a, const double* b, double c,
                 std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d =
            _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(d, vc));
    }
    for (; i < n; ++i) dst[i] = (a[i] - b[i]) * c;
}

void v_scale(double* dst, const double* a, double c, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vc));
    for (; i < n; ++i) dst[i] = a[i] * c;
}

void v_fma_tap(double* dst, const double* src, double w, std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_fmadd_pd(_mm256_loadu_pd(src + i), vw,
                                          _mm256_loadu_pd(dst + i));
        _mm256_storeu_pd(dst + i, r);
    }
    for (; i < n; ++i) dst[i] = std::fma(src[i], w, dst[i]);
}

void v_sq_accum(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d sq = _mm256_mul_pd(vx, vx);
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), sq));
    }
    for (; i < n; ++i) {
        const double sq = x[i] * x[i];
        acc[i] = acc[i] + sq;
    }
}

void v_sqrt_inplace(double* v, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(v + i, _mm256_sqrt_pd(_mm256_loadu_pd(v + i)));
    for (; i < n; ++i) v[i] = std::sqrt(v[i]);
}

void v_max_into(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // max_pd(a, b) == a > b ? a : b, matching the scalar expression.
        const __m256d r =
            _mm256_max_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(acc + i, r);
    }
    for (; i < n; ++i) acc[i] = acc[i] > x[i] ? acc[i] : x[i];
}

void v_clamp_nonpos(double* dst, const double* x, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d lt = _mm256_cmp_pd(vx, zero, _CMP_LT_OQ);
        _mm256_storeu_pd(dst + i, _mm256_and_pd(vx, lt));
    }
    for (; i < n; ++i) dst[i] = x[i] < 0.0 ? x[i] : 0.0;
}

std::int64_t v_count_gt(const double* v, double t, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(t);
    std::int64_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gt = _mm256_cmp_pd(_mm256_loadu_pd(v + i), vt, _CMP_GT_OQ);
        c += _mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_pd(gt)));
    }
    for (; i < n; ++i) c += v[i] > t ? 1 : 0;
    return c;
}

bool cpu_has_avx2_fma() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace

const Backend* avx2() {
    static const Backend b{"avx2",        v_fill,         v_sub_scale,
                           v_scale,       v_fma_tap,      v_sq_accum,
                           v_sqrt_inplace, v_max_into,    v_clamp_nonpos,
                           v_count_gt};
    static const Backend* selected = cpu_has_avx2_fma() ? &b : nullptr;
    return selected;
}

} // namespace steiner::kernels

#else

namespace steiner::kernels {
const Backend* avx2() { return nullptr; }
} // namespace steiner::kernels

#endif
