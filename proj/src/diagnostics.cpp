#include "steiner/diagnostics.hpp"

#include "steiner/parallel.hpp"
#include "steiner/rearrange.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace steiner {

namespace {

// Central-difference criticality: all k y-components vanish exactly, which
// for a uniform stencil is neighbour equality. Interior cells only.
bool is_y_critical(const Grid& g, std::span<const double> v, std::int64_t cell,
                   std::span<const int> ycoords) {
    for (int j = 0; j < g.codim(); ++j) {
        const int axis = g.y_axis_begin() + j;
        const int c = ycoords[static_cast<std::size_t>(j)];
        if (c == 0 || c == g.dim(axis) - 1) return false;
        const std::int64_t s = g.stride(axis);
        if (v[static_cast<std::size_t>(cell + s)] !=
            v[static_cast<std::size_t>(cell - s)])
            return false;
    }
    return true;
}

struct SectionStats {
    double L = 0.0, p = 0.0;
    std::vector<double> beta;
};

// Statistics of one gathered y-block (row-major over the y axes); the set is
// empty outside the block.
SectionStats section_stats(const Grid& g, const std::uint8_t* block) {
    const int k = g.codim();
    SectionStats st;
    st.beta.assign(static_cast<std::size_t>(k), 0.0);
    std::int64_t count = 0;

    std::vector<std::int64_t> ystride(static_cast<std::size_t>(k), 1);
    for (int a = k - 2; a >= 0; --a)
        ystride[static_cast<std::size_t>(a)] =
            ystride[static_cast<std::size_t>(a + 1)] * g.dim(g.y_axis_begin() + a + 1);

    std::vector<int> yc(static_cast<std::size_t>(k), 0);
    for (std::int64_t j = 0; j < g.y_count(); ++j) {
        if (block[j]) {
            ++count;
            for (int a = 0; a < k; ++a)
                st.beta[static_cast<std::size_t>(a)] +=
                    g.y_center(a, yc[static_cast<std::size_t>(a)]);
            // boundary faces along each y axis (outside the grid is empty)
            for (int a = 0; a < k; ++a) {
                const int axis = g.y_axis_begin() + a;
                const std::int64_t s = ystride[static_cast<std::size_t>(a)];
                const double face = g.y_cell_volume() / g.spacing(axis);
                const int c = yc[static_cast<std::size_t>(a)];
                if (c == 0 || block[j - s] == 0) st.p += face;
                if (c == g.dim(axis) - 1 || block[j + s] == 0) st.p += face;
            }
        }
        for (int a = k - 1; a >= 0; --a) {
            if (++yc[static_cast<std::size_t>(a)] < g.dim(g.y_axis_begin() + a)) break;
            yc[static_cast<std::size_t>(a)] = 0;
        }
    }
    st.L = static_cast<double>(count) * g.y_cell_volume();
    if (count > 0)
        for (double& b : st.beta) b /= static_cast<double>(count);
    return st;
}

SliceRow make_row(const Grid& g, std::int64_t slice, double t,
                  const SectionStats& st) {
    const int k = g.codim();
    SliceRow row;
    row.slice_coords.resize(static_cast<std::size_t>(g.x_dims() + (g.has_t_axis() ? 1 : 0)));
    g.slice_coords(slice, row.slice_coords);
    row.t = t;
    row.L = st.L;
    row.p = st.p;
    row.beta = st.beta;
    const double omega = ball_volume_constant(k);
    row.R = st.L > 0.0 ? std::pow(st.L / omega, 1.0 / static_cast<double>(k)) : 0.0;
    row.deficit =
        st.p - static_cast<double>(k) * std::pow(omega, 1.0 / static_cast<double>(k)) *
                   std::pow(st.L, (static_cast<double>(k) - 1.0) / static_cast<double>(k));
    row.ball_score = st.p > 0.0 ? row.deficit / st.p : 0.0;
    return row;
}

// Mollified-normal verticality share of the boundary measure of E:
// among samples with |grad chi^eps| > theta, the weight fraction whose
// normal has |nu_y| < tau.
void vertical_fraction(const VoxelSet& e, double theta, double tau,
                       ConditionReport& rep) {
    const Grid& g = e.grid();
    rep.theta = theta > 0.0 ? theta : 0.1 / g.max_spacing();
    rep.tau = tau > 0.0 ? tau : 0.1;
    double num = 0.0, den = 0.0;
    for (const SurfaceSample& s :
         surface_samples(e, SurfaceScheme::mollified, 2.0, rep.theta)) {
        den += s.weight;
        double ny2 = 0.0;
        for (int j = 0; j < g.codim(); ++j) {
            const double c = s.normal[static_cast<std::size_t>(g.y_axis_begin() + j)];
            ny2 += c * c;
        }
        if (std::sqrt(ny2) < rep.tau) num += s.weight;
    }
    rep.boundary_vertical_fraction = den > 0.0 ? num / den : 0.0;
}

// flood fill over the x-lattice (face adjacency)
bool x_connected(const Grid& g, const std::vector<std::uint8_t>& xmask) {
    const int nx = g.x_dims();
    const std::int64_t n = g.x_count();
    std::int64_t first = -1, total = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (xmask[static_cast<std::size_t>(i)]) {
            if (first < 0) first = i;
            ++total;
        }
    if (total == 0) return true;
    if (nx == 0) return true;
    std::vector<std::int64_t> xstride(static_cast<std::size_t>(nx), 1);
    for (int a = nx - 2; a >= 0; --a)
        xstride[static_cast<std::size_t>(a)] =
            xstride[static_cast<std::size_t>(a + 1)] * g.dim(a + 1);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> stack{first};
    seen[static_cast<std::size_t>(first)] = 1;
    std::int64_t reached = 0;
    while (!stack.empty()) {
        const std::int64_t i = stack.back();
        stack.pop_back();
        ++reached;
        for (int a = 0; a < nx; ++a) {
            const std::int64_t s = xstride[static_cast<std::size_t>(a)];
            const int c = static_cast<int>((i / s) % g.dim(a));
            for (int d = -1; d <= 1; d += 2) {
                if (c + d < 0 || c + d >= g.dim(a)) continue;
                const std::int64_t j = i + d * s;
                if (!xmask[static_cast<std::size_t>(j)] || seen[static_cast<std::size_t>(j)])
                    continue;
                seen[static_cast<std::size_t>(j)] = 1;
                stack.push_back(j);
            }
        }
    }
    return reached == total;
}

ConditionReport condition_common(const Grid& g,
                                 const std::vector<std::uint8_t>& support,
                                 const VoxelSet& domain, double theta,
                                 double tau) {
    ConditionReport rep;
    // projection connectedness over x (any over t and y)
    std::vector<std::uint8_t> xmask(static_cast<std::size_t>(g.x_count()), 0);
    for (std::int64_t s = 0; s < g.slice_count(); ++s) {
        const std::int64_t base = g.slice_base(s);
        for (std::int64_t off : g.y_offsets())
            if (support[static_cast<std::size_t>(base + off)]) {
                xmask[static_cast<std::size_t>(g.x_of_slice(s))] = 1;
                break;
            }
    }
    rep.projection_connected = x_connected(g, xmask);

    // bounded in y: the support must not touch the outermost y-layer
    rep.y_bounded = true;
    std::vector<int> yc(static_cast<std::size_t>(g.codim()));
    for (std::int64_t s = 0; s < g.slice_count() && rep.y_bounded; ++s) {
        const std::int64_t base = g.slice_base(s);
        const auto& offs = g.y_offsets();
        for (std::int64_t j = 0; j < g.y_count(); ++j) {
            if (!support[static_cast<std::size_t>(base + offs[static_cast<std::size_t>(j)])])
                continue;
            g.y_coords(j, yc);
            for (int a = 0; a < g.codim(); ++a) {
                const int d = g.dim(g.y_axis_begin() + a);
                if (yc[static_cast<std::size_t>(a)] == 0 ||
                    yc[static_cast<std::size_t>(a)] == d - 1) {
                    rep.y_bounded = false;
                    break;
                }
            }
            if (!rep.y_bounded) break;
        }
    }

    vertical_fraction(domain, theta, tau, rep);
    return rep;
}

} // namespace

double ball_volume_constant(int k) {
    return std::pow(std::numbers::pi, static_cast<double>(k) / 2.0) /
           std::tgamma(static_cast<double>(k) / 2.0 + 1.0);
}

GapReport polya_szego_report(const GridFunction& u, const Integrand& f,
                             DiffScheme scheme, const Region* region) {
    GapReport rep;
    rep.value_original = dirichlet_integral(u, f, scheme, region);
    rep.value_symmetrized =
        dirichlet_integral(steiner_rearrange(u), f, scheme, region);
    rep.gap = rep.value_original - rep.value_symmetrized;
    rep.h = u.grid().max_spacing();
    rep.scheme = to_string(scheme);
    return rep;
}

GapReport perimeter_report(const VoxelSet& e, const SurfaceIntegrand& F,
                           SurfaceScheme scheme, double mollify_width,
                           const Region* region) {
    GapReport rep;
    const VoxelSet es = steiner_symmetrize_set(e);
    if (scheme == SurfaceScheme::faces) {
        rep.value_original = surface_energy_faces(e, F, region);
        rep.value_symmetrized = surface_energy_faces(es, F, region);
    } else {
        rep.value_original = surface_energy_mollified(e, F, mollify_width, region);
        rep.value_symmetrized =
            surface_energy_mollified(es, F, mollify_width, region);
    }
    rep.gap = rep.value_original - rep.value_symmetrized;
    rep.h = e.grid().max_spacing();
    rep.scheme = to_string(scheme);
    return rep;
}

std::vector<double> chain_report(const GridFunction& u, const Integrand& f,
                                 DiffScheme scheme) {
    std::vector<double> values;
    values.push_back(dirichlet_integral(u, f, scheme));
    if (u.grid().codim() == 1) {
        values.push_back(dirichlet_integral(steiner_rearrange(u), f, scheme));
        return values;
    }
    GridFunction v = u;
    for (int j = 0; j < u.grid().codim(); ++j) {
        v = codim1_symmetrize(v, j);
        values.push_back(dirichlet_integral(v, f, scheme));
    }
    values.push_back(dirichlet_integral(steiner_rearrange(u), f, scheme));
    return values;
}

std::vector<SliceRow> slice_analysis(const VoxelSet& e) {
    const Grid& g = e.grid();
    std::vector<SliceRow> rows(static_cast<std::size_t>(g.slice_count()));
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        thread_local std::vector<std::uint8_t> block;
        block.resize(static_cast<std::size_t>(g.y_count()));
        const auto& offs = g.y_offsets();
        for (std::size_t j = 0; j < block.size(); ++j)
            block[j] = e.mask()[static_cast<std::size_t>(base + offs[j])];
        const SectionStats st = section_stats(g, block.data());
        double t = 0.0;
        if (g.has_t_axis()) {
            std::vector<int> coords(static_cast<std::size_t>(g.x_dims() + 1));
            g.slice_coords(s, coords);
            t = g.center(g.t_axis(), coords.back());
        }
        rows[static_cast<std::size_t>(s)] = make_row(g, s, t, st);
    });
    return rows;
}

std::vector<SliceRow> slice_analysis(const GridFunction& u, int t_levels) {
    if (t_levels < 1)
        throw std::invalid_argument("slice_analysis: need at least one level");
    const Grid& g = u.grid();
    const double maxu = u.max_value();
    const double step = maxu > 0.0 ? maxu / static_cast<double>(t_levels) : 1.0;
    std::vector<SliceRow> rows(static_cast<std::size_t>(g.slice_count()) *
                               static_cast<std::size_t>(t_levels));
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        thread_local std::vector<double> vals;
        thread_local std::vector<std::uint8_t> block;
        vals.resize(static_cast<std::size_t>(g.y_count()));
        block.resize(vals.size());
        const auto& offs = g.y_offsets();
        for (std::size_t j = 0; j < vals.size(); ++j)
            vals[j] = u.value(base + offs[j]);
        for (int lev = 0; lev < t_levels; ++lev) {
            const double t = (static_cast<double>(lev) + 0.5) * step;
            for (std::size_t j = 0; j < vals.size(); ++j)
                block[j] = vals[j] > t ? 1 : 0;
            const SectionStats st = section_stats(g, block.data());
            rows[static_cast<std::size_t>(s) * static_cast<std::size_t>(t_levels) +
                 static_cast<std::size_t>(lev)] = make_row(g, s, t, st);
        }
    });
    return rows;
}

ConditionReport condition_report(const GridFunction& u, double theta,
                                 double tau) {
    const Grid& g = u.grid();
    std::vector<std::uint8_t> support(u.values().size());
    for (std::size_t i = 0; i < support.size(); ++i)
        support[i] = u.values()[i] > 0.0 ? 1 : 0;
    ConditionReport rep = condition_common(
        g, support, VoxelSet(g, support), theta, tau);

    const std::vector<double> maxes = slice_max(u);
    std::vector<double> per_slice(static_cast<std::size_t>(g.slice_count()), 0.0);
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        const double m = maxes[static_cast<std::size_t>(s)];
        if (m == 0.0) return;   // empty slice: nothing below the peak
        std::int64_t crit = 0;
        std::vector<int> yc(static_cast<std::size_t>(g.codim()));
        const auto& offs = g.y_offsets();
        for (std::int64_t j = 0; j < g.y_count(); ++j) {
            const std::int64_t cell = base + offs[static_cast<std::size_t>(j)];
            if (!(u.value(cell) < m)) continue;
            g.y_coords(j, yc);
            if (is_y_critical(g, u.values(), cell, yc)) ++crit;
        }
        per_slice[static_cast<std::size_t>(s)] = static_cast<double>(crit);
    });
    rep.critical_measure = pairwise_sum(per_slice) * g.cell_volume();
    return rep;
}

ConditionReport condition_report(const VoxelSet& e, double theta, double tau) {
    std::vector<std::uint8_t> support(e.mask().begin(), e.mask().end());
    ConditionReport rep =
        condition_common(e.grid(), support, e, theta, tau);
    rep.critical_measure = 0.0;   // the flatness condition concerns functions
    return rep;
}

std::vector<LambdaDerivRow> verify_lambda_derivatives(
    const GridFunction& u, int x_axis, const std::vector<double>& thresholds,
    double delta) {
    const Grid& g = u.grid();
    if (g.has_t_axis())
        throw std::invalid_argument("verify_lambda_derivatives: plain grids only");
    if (x_axis < 0 || x_axis >= g.x_dims())
        throw std::invalid_argument("verify_lambda_derivatives: axis outside x-block");
    if (!(delta > 0.0))
        throw std::invalid_argument("verify_lambda_derivatives: delta must be positive");

    const DistributionTable table = distribution(u, thresholds);
    const GradientField grad = gradient(u, DiffScheme::central);
    const std::vector<double>& di = grad.comp[static_cast<std::size_t>(x_axis)];
    const double h = g.spacing(x_axis);
    const double yvol = g.y_cell_volume();

    std::vector<LambdaDerivRow> rows(static_cast<std::size_t>(g.slice_count()) *
                                     thresholds.size());
    const int ncoord = g.x_dims();
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        std::vector<int> coords(static_cast<std::size_t>(ncoord));
        g.slice_coords(s, coords);
        const int c = coords[static_cast<std::size_t>(x_axis)];

        auto lambda_at = [&](int shift, std::size_t ti) -> double {
            const int cc = c + shift;
            if (cc < 0 || cc >= g.dim(x_axis)) return 0.0;   // zero extension
            std::vector<int> nb = coords;
            nb[static_cast<std::size_t>(x_axis)] = cc;
            return table.at(g.slice_ordinal(nb), ti);
        };

        const std::int64_t base = g.slice_base(s);
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
            LambdaDerivRow row;
            row.slice_coords = coords;
            row.t = thresholds[ti];
            row.lhs = (lambda_at(+1, ti) - lambda_at(-1, ti)) / (2.0 * h);
            double shell_sum = 0.0;
            std::int64_t shell = 0;
            for (std::int64_t off : g.y_offsets()) {
                const double v = u.value(base + off);
                if (v > row.t && v <= row.t + delta) {
                    shell_sum += di[static_cast<std::size_t>(base + off)];
                    ++shell;
                }
            }
            row.shell_cells = shell;
            if (shell == 0) {
                row.skipped = true;
                row.rhs = 0.0;
                row.abs_err = std::numeric_limits<double>::quiet_NaN();
            } else {
                row.rhs = shell_sum * yvol / delta;
                row.abs_err = std::abs(row.lhs - row.rhs);
            }
            rows[static_cast<std::size_t>(s) * thresholds.size() + ti] = row;
        }
    });
    return rows;
}

CoareaProbe coarea_irregularity_probe(const GridFunction& u, int bins) {
    if (bins < 1) throw std::invalid_argument("coarea probe: bins must be positive");
    const Grid& g = u.grid();
    CoareaProbe probe;
    probe.bin_mass.assign(static_cast<std::size_t>(bins), 0.0);
    const double maxu = u.max_value();
    if (maxu == 0.0) return probe;
    probe.bin_width = maxu / static_cast<double>(bins);

    std::vector<int> yc(static_cast<std::size_t>(g.codim()));
    for (std::int64_t s = 0; s < g.slice_count(); ++s) {
        const std::int64_t base = g.slice_base(s);
        const auto& offs = g.y_offsets();
        for (std::int64_t j = 0; j < g.y_count(); ++j) {
            const std::int64_t cell = base + offs[static_cast<std::size_t>(j)];
            const double v = u.value(cell);
            if (!(v > 0.0)) continue;
            g.y_coords(j, yc);
            if (!is_y_critical(g, u.values(), cell, yc)) continue;
            int b = static_cast<int>(v / maxu * static_cast<double>(bins));
            if (b >= bins) b = bins - 1;
            probe.bin_mass[static_cast<std::size_t>(b)] += g.cell_volume();
        }
    }
    for (double m : probe.bin_mass) probe.mass += m;
    return probe;
}

} // namespace steiner
