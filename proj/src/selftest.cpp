#include "steiner/selftest.hpp"

#include "steiner/diagnostics.hpp"
#include "steiner/functionals.hpp"
#include "steiner/generators.hpp"
#include "steiner/io.hpp"
#include "steiner/kernels.hpp"
#include "steiner/rearrange.hpp"
#include "steiner/reports.hpp"
#include "steiner/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace steiner {

namespace {

GridFunction random_function(const Grid& g, Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(g.cell_count()));
    for (auto& x : v) x = rng.unit();
    return GridFunction(g, std::move(v));
}

VoxelSet random_set(const Grid& g, Rng& rng, double fill = 0.4) {
    std::vector<std::uint8_t> m(static_cast<std::size_t>(g.cell_count()));
    for (auto& b : m) b = rng.unit() < fill ? 1 : 0;
    return VoxelSet(g, std::move(m));
}

double norm_p(std::span<const double> v, double p) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

double diff_norm_p(std::span<const double> a, std::span<const double> b,
                   double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

struct Suite {
    std::ostream& out;
    int failures = 0;

    void check(const char* name, bool ok, double detail) {
        out << (ok ? "PASS " : "FAIL ") << name << " (" << format_double(detail)
            << ")\n";
        if (!ok) ++failures;
    }
};

} // namespace

int selftest(std::ostream& out) {
    Suite s{out};
    Rng rng(20240901);

    const Grid g1({17, 16}, {0.125, 0.1}, 1);        // k = 1
    const Grid g2({5, 9, 11}, {0.2, 0.11, 0.13}, 2); // k = 2

    // exact identities on random data
    for (const Grid* gp : {&g1, &g2}) {
        const Grid& g = *gp;
        double worst_equi = 0.0, worst_idem = 0.0, worst_mono = 0.0;
        double worst_norm = 0.0, worst_nonexp = 0.0, worst_level = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const GridFunction u = random_function(g, rng);
            const GridFunction v = random_function(g, rng);
            const GridFunction us = steiner_rearrange(u);
            const GridFunction vs = steiner_rearrange(v);

            // per-slice equidistribution: sorted slices coincide
            for (std::int64_t sl = 0; sl < g.slice_count(); ++sl) {
                std::vector<double> a, b;
                const std::int64_t base = g.slice_base(sl);
                for (std::int64_t off : g.y_offsets()) {
                    a.push_back(u.value(base + off));
                    b.push_back(us.value(base + off));
                }
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                for (std::size_t i = 0; i < a.size(); ++i)
                    worst_equi = std::max(worst_equi, std::abs(a[i] - b[i]));
            }
            for (double p : {1.0, 2.0})
                worst_norm = std::max(
                    worst_norm, std::abs(norm_p(u.values(), p) -
                                         norm_p(us.values(), p)) /
                                    std::max(1.0, norm_p(u.values(), p)));
            for (double p : {1.0, 2.0}) {
                const double lhs = diff_norm_p(us.values(), vs.values(), p);
                const double rhs = diff_norm_p(u.values(), v.values(), p);
                worst_nonexp = std::max(worst_nonexp, lhs - rhs);
            }
            const GridFunction uss = steiner_rearrange(us);
            for (std::size_t i = 0; i < us.values().size(); ++i)
                worst_idem = std::max(
                    worst_idem, std::abs(us.values()[i] - uss.values()[i]));

            // monotone coupling: u <= w pointwise is preserved
            std::vector<double> wv(u.values().begin(), u.values().end());
            for (auto& x : wv) x += rng.unit();
            const GridFunction ws = steiner_rearrange(GridFunction(g, wv));
            for (std::size_t i = 0; i < wv.size(); ++i)
                worst_mono =
                    std::max(worst_mono, us.values()[i] - ws.values()[i]);

            // superlevel commutation at a random threshold
            const double t = rng.unit();
            const VoxelSet lhs = steiner_symmetrize_set(superlevel(u, t));
            const VoxelSet rhs = superlevel(us, t);
            for (std::size_t i = 0; i < lhs.mask().size(); ++i)
                worst_level = std::max(
                    worst_level,
                    std::abs(static_cast<double>(lhs.mask()[i]) -
                             static_cast<double>(rhs.mask()[i])));
        }
        const char* tag = g.codim() == 1 ? "k1" : "k2";
        char name[64];
        std::snprintf(name, sizeof name, "equidistribution_%s", tag);
        s.check(name, worst_equi == 0.0, worst_equi);
        std::snprintf(name, sizeof name, "norm_preservation_%s", tag);
        s.check(name, worst_norm <= 1e-12, worst_norm);
        std::snprintf(name, sizeof name, "non_expansive_%s", tag);
        s.check(name, worst_nonexp <= 1e-12, worst_nonexp);
        std::snprintf(name, sizeof name, "idempotent_%s", tag);
        s.check(name, worst_idem == 0.0, worst_idem);
        std::snprintf(name, sizeof name, "monotone_%s", tag);
        s.check(name, worst_mono <= 0.0, worst_mono);
        std::snprintf(name, sizeof name, "superlevel_commutes_%s", tag);
        s.check(name, worst_level == 0.0, worst_level);
    }

    // subgraph commutation (exact cellwise)
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const GridFunction u = random_function(g1, rng);
            const VoxelSet a = steiner_symmetrize_set(subgraph(u, 12, 0.09));
            const VoxelSet b = subgraph(steiner_rearrange(u), 12, 0.09);
            for (std::size_t i = 0; i < a.mask().size(); ++i)
                worst = std::max(worst,
                                 std::abs(static_cast<double>(a.mask()[i]) -
                                          static_cast<double>(b.mask()[i])));
        }
        s.check("subgraph_commutes", worst == 0.0, worst);
    }

    // Fubini counting identity on random sets
    {
        std::int64_t mismatch = 0;
        for (int trial = 0; trial < 5; ++trial) {
            const VoxelSet e = random_set(g2, rng);
            std::int64_t per_slice = 0;
            for (std::int64_t sl = 0; sl < g2.slice_count(); ++sl)
                per_slice += e.section_count(sl);
            mismatch += std::abs(per_slice - e.popcount());
        }
        s.check("fubini_counts", mismatch == 0,
                static_cast<double>(mismatch));
    }

    // symmetral barycenter bound: per component |beta_j| <= h_j / 2
    {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const VoxelSet es = steiner_symmetrize_set(random_set(g2, rng));
            for (const SliceRow& row : slice_analysis(es)) {
                if (row.L <= 0.0) continue;
                for (int j = 0; j < g2.codim(); ++j) {
                    const double hj = g2.spacing(g2.y_axis_begin() + j);
                    worst = std::max(worst,
                                     std::abs(row.beta[static_cast<std::size_t>(j)]) -
                                         0.5 * hj);
                }
            }
        }
        s.check("symmetral_barycenter", worst <= 1e-12, worst);
    }

    // face-count energy is exact on boxes
    {
        const Grid g({32, 32}, {1.0 / 16, 1.0 / 16}, 2);
        GeneratorSpec spec;
        spec.name = "box";
        spec.radius = 0.5;
        const VoxelSet box = make_set(g, spec);
        const double got = surface_energy_faces(box, SurfaceIntegrand::euclidean());
        // 16 cells of 1/16 per side -> unit square, perimeter 4
        s.check("faces_box_exact", std::abs(got - 4.0) <= 1e-12,
                std::abs(got - 4.0));
    }

    // lift homogeneity
    {
        Rng lrng(7);
        std::vector<AffinePiece> pieces;
        for (int i = 0; i < 4; ++i)
            pieces.push_back({{lrng.uniform(-1.0, 1.0)}, lrng.uniform(0.0, 1.0),
                              lrng.uniform(-0.5, 0.0)});
        const SurfaceIntegrand F = lift(RadialAffineIntegrand(1, pieces));
        const HomogeneityReport rep = homogeneity_selftest(F, 1, 2000, 11);
        s.check("lift_homogeneous", rep.max_defect <= 1e-12, rep.max_defect);
    }

    // persistence round-trip is bitwise
    {
        const GridFunction u = random_function(g2, rng);
        const std::string path = "selftest_roundtrip.stnr1";
        save(u, path);
        const GridFunction v = load_function(path);
        std::remove(path.c_str());
        double worst = 0.0;
        for (std::size_t i = 0; i < u.values().size(); ++i)
            if (u.values()[i] != v.values()[i]) worst = 1.0;
        s.check("stnr_roundtrip", worst == 0.0, worst);
    }

    // scalar and SIMD backends agree bit for bit
    {
        const auto& sb = kernels::scalar();
        const auto* vb = kernels::avx2();
        double worst = 0.0;
        if (vb != nullptr) {
            Rng krng(99);
            const std::size_t n = 1031;
            std::vector<double> a(n), b(n), r1(n), r2(n);
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = krng.uniform(-2.0, 2.0);
                b[i] = krng.uniform(-2.0, 2.0);
            }
            sb.sub_scale(r1.data(), a.data(), b.data(), 1.7, n);
            vb->sub_scale(r2.data(), a.data(), b.data(), 1.7, n);
            for (std::size_t i = 0; i < n; ++i)
                if (r1[i] != r2[i]) worst = 1.0;
            sb.fma_tap(r1.data(), a.data(), -0.3, n);
            vb->fma_tap(r2.data(), a.data(), -0.3, n);
            for (std::size_t i = 0; i < n; ++i)
                if (r1[i] != r2[i]) worst = 1.0;
            if (sb.count_gt(a.data(), 0.25, n) != vb->count_gt(a.data(), 0.25, n))
                worst = 1.0;
        }
        s.check("kernel_backends_agree", worst == 0.0, worst);
    }

    // codim-2 chain is monotone within scheme tolerance
    {
        const Grid g({8, 24, 24}, {0.25, 1.0 / 12, 1.0 / 12}, 2);
        GeneratorSpec spec;
        spec.name = "random_smooth";
        spec.seed = 5;
        spec.scale = 0.5;
        const GridFunction u = make_function(g, spec);
        const std::vector<double> chain =
            chain_report(u, PowerIntegrand(0.0, 1.0, 2.0));
        double worst = 0.0;
        for (std::size_t i = 1; i < chain.size(); ++i)
            worst = std::max(worst, chain[i] - chain[i - 1]);
        s.check("chain_monotone", worst <= 1e-6, worst);
    }

    out << (s.failures == 0 ? "selftest: all checks passed\n"
                            : "selftest: FAILURES\n");
    return s.failures;
}

} // namespace steiner
