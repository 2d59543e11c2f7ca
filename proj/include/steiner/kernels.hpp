#pragma once

#include <cstddef>
#include <cstdint>

namespace steiner::kernels {

// Elementwise building blocks for the bulk evaluators (finite differences,
// integrand maps, separable convolution, threshold counting).
//
// Contract: every backend produces bit-identical output per element. SIMD
// variants vectorize across elements only and replicate the scalar operation
// sequence exactly; reductions are never reassociated here (sums stay with
// the caller, which owns the canonical order).
struct Backend {
    const char* name;

    // dst[i] = value
    void (*fill)(double* dst, double value, std::size_t n);
    // dst[i] = (a[i] - b[i]) * c
    void (*sub_scale)(double* dst, const double* a, const double* b, double c,
                      std::size_t n);
    // dst[i] = a[i] * c
    void (*scale)(double* dst, const double* a, double c, std::size_t n);
    // dst[i] = fma(src[i], w, dst[i])
    void (*fma_tap)(double* dst, const double* src, double w, std::size_t n);
    // acc[i] += x[i] * x[i]   (mul then add, no fma)
    void (*sq_accum)(double* acc, const double* x, std::size_t n);
    void (*sqrt_inplace)(double* v, std::size_t n);
    // acc[i] = acc[i] > x[i] ? acc[i] : x[i]
    void (*max_into)(double* acc, const double* x, std::size_t n);
    // dst[i] = x[i] < 0 ? x[i] : 0
    void (*clamp_nonpos)(double* dst, const double* x, std::size_t n);
    std::int64_t (*count_gt)(const double* v, double t, std::size_t n);
};

const Backend& scalar();

// Null when this build or CPU has no AVX2+FMA.
const Backend* avx2();

// Runtime selection: AVX2 when available unless STEINER_SIMD=scalar.
const Backend& active();

} // namespace steiner::kernels
