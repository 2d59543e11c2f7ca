#include "steiner/kernels.hpp"

#include <cmath>

// Reference backend. The AVX2 backend must match these loops element for
// element, so any change here is an ABI change for the equivalence tests.

namespace steiner::kernels {
namespace {

void s_fill(double* dst, double value, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = value;
}

void s_sub_scale(double* dst, const double* a, const double* b, double c,
                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = (a[i] - b[i]) * c;
}

void s_scale(double* dst, const double* a, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * c;
}

void s_fma_tap(double* dst, const double* src, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::fma(src[i], w, dst[i]);
}

void s_sq_accum(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = x[i] * x[i];
        acc[i] = acc[i] + sq;
    }
}

void s_sqrt_inplace(double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sqrt(v[i]);
}

void s_max_into(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] = acc[i] > x[i] ? acc[i] : x[i];
}

void s_clamp_nonpos(double* dst, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = x[i] < 0.0 ? x[i] : 0.0;
}

std::int64_t s_count_gt(const double* v, double t, std::size_t n) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += v[i] > t ? 1 : 0;
    return c;
}

} // namespace

const Backend& scalar() {
    static const Backend b{"scalar",      s_fill,         s_sub_scale,
                           s_scale,       s_fma_tap,      s_sq_accum,
                           s_sqrt_inplace, s_max_into,    s_clamp_nonpos,
                           s_count_gt};
    return b;
}

} // namespace steiner::kernels
