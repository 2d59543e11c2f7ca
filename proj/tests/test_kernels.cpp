#include "steiner/kernels.hpp"
#include "steiner/rng.hpp"

#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

using namespace steiner;

namespace {
std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}
} // namespace

// The SIMD backend must be bit-identical to the scalar reference, including
// odd tails, signed zeros and subnormal-ish values.
TEST_CASE("kernel backends agree bit for bit") {
    const auto& sb = kernels::scalar();
    const auto* vb = kernels::avx2();
    if (vb == nullptr) {
        MESSAGE("no AVX2 backend on this machine; scalar-only");
        return;
    }
    Rng rng(123);
    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 64u, 129u, 1000u}) {
        auto a = random_vec(rng, n, -3.0, 3.0);
        auto b = random_vec(rng, n, -3.0, 3.0);
        a[0] = 0.0;
        if (n > 2) b[1] = -0.0;

        std::vector<double> r1(n), r2(n);
        sb.fill(r1.data(), 0.25, n);
        vb->fill(r2.data(), 0.25, n);
        CHECK(r1 == r2);

        sb.sub_scale(r1.data(), a.data(), b.data(), 1.0 / 3.0, n);
        vb->sub_scale(r2.data(), a.data(), b.data(), 1.0 / 3.0, n);
        CHECK(r1 == r2);

        sb.scale(r1.data(), a.data(), -0.7, n);
        vb->scale(r2.data(), a.data(), -0.7, n);
        CHECK(r1 == r2);

        sb.fma_tap(r1.data(), b.data(), 0.31, n);
        vb->fma_tap(r2.data(), b.data(), 0.31, n);
        CHECK(r1 == r2);

        sb.sq_accum(r1.data(), a.data(), n);
        vb->sq_accum(r2.data(), a.data(), n);
        CHECK(r1 == r2);

        // sqrt needs non-negative input
        std::vector<double> p1(n), p2(n);
        for (std::size_t i = 0; i < n; ++i) p1[i] = p2[i] = a[i] * a[i];
        sb.sqrt_inplace(p1.data(), n);
        vb->sqrt_inplace(p2.data(), n);
        CHECK(p1 == p2);

        sb.max_into(r1.data(), b.data(), n);
        vb->max_into(r2.data(), b.data(), n);
        CHECK(r1 == r2);

        sb.clamp_nonpos(r1.data(), a.data(), n);
        vb->clamp_nonpos(r2.data(), a.data(), n);
        CHECK(r1 == r2);

        CHECK(sb.count_gt(a.data(), 0.1, n) == vb->count_gt(a.data(), 0.1, n));
        CHECK(sb.count_gt(a.data(), -5.0, n) == static_cast<std::int64_t>(n));
    }
}

TEST_CASE("max_into ties keep the accumulator, both backends") {
    const auto& sb = kernels::scalar();
    std::vector<double> acc{0.0, -0.0, 1.0, 2.0};
    std::vector<double> x{-0.0, 0.0, 1.0, -2.0};
    std::vector<double> acc2 = acc;
    sb.max_into(acc.data(), x.data(), acc.size());
    if (const auto* vb = kernels::avx2()) {
        vb->max_into(acc2.data(), x.data(), acc2.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            CHECK(std::memcmp(&acc[i], &acc2[i], sizeof(double)) == 0);
        }
    }
    CHECK(acc[2] == 1.0);
    CHECK(acc[3] == 2.0);
}

TEST_CASE("active backend honours STEINER_SIMD") {
    // can only assert it is one of the two
    const auto& kb = kernels::active();
    const bool known = std::string(kb.name) == "scalar" ||
                       std::string(kb.name) == "avx2";
    CHECK(known);
}
