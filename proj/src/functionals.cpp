#include "steiner/functionals.hpp"

#include "steiner/kernels.hpp"
#include "steiner/parallel.hpp"
#include "steiner/rearrange.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace steiner {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Applies a difference stencil along one axis, slab by slab. A slab is the
// contiguous run stride * dim covering one sweep of the axis; within it the
// shifted element is a constant offset away, which keeps the kernels
// elementwise.
template <typename Body>
void for_each_slab(const Grid& g, int axis, Body&& body) {
    const std::int64_t s = g.stride(axis);
    const std::int64_t slab = s * g.dim(axis);
    const std::int64_t count = g.cell_count() / slab;
    parallel_for(count, [&](std::int64_t b) { body(b * slab, slab); });
}

void diff_axis(const Grid& g, int axis, const double* in, double* out,
               DiffScheme scheme) {
    const auto& kb = kernels::active();
    const std::int64_t s = g.stride(axis);
    const int d = g.dim(axis);
    const double h = g.spacing(axis);
    if (scheme == DiffScheme::forward) {
        const double invh = 1.0 / h;
        for_each_slab(g, axis, [&](std::int64_t base, std::int64_t slab) {
            const double* src = in + base;
            double* dst = out + base;
            const std::int64_t body = s * (d - 1);
            if (body > 0)
                kb.sub_scale(dst, src + s, src, invh,
                             static_cast<std::size_t>(body));
            // top boundary: neighbour outside is 0
            kb.scale(dst + body, src + body, -invh, static_cast<std::size_t>(s));
            (void)slab;
        });
    } else {
        const double inv2h = 1.0 / (2.0 * h);
        for_each_slab(g, axis, [&](std::int64_t base, std::int64_t slab) {
            const double* src = in + base;
            double* dst = out + base;
            if (d == 1) {
                kb.fill(dst, 0.0, static_cast<std::size_t>(s));
                return;
            }
            const std::int64_t interior = s * (d - 2);
            kb.scale(dst, src + s, inv2h, static_cast<std::size_t>(s));
            if (interior > 0)
                kb.sub_scale(dst + s, src + 2 * s, src, inv2h,
                             static_cast<std::size_t>(interior));
            kb.scale(dst + slab - s, src + slab - 2 * s, -inv2h,
                     static_cast<std::size_t>(s));
        });
    }
}

std::vector<std::vector<double>> gradient_arrays(const Grid& g,
                                                 const double* in,
                                                 DiffScheme scheme) {
    std::vector<std::vector<double>> comp(static_cast<std::size_t>(g.rank()));
    for (int a = 0; a < g.rank(); ++a) {
        comp[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(g.cell_count()));
        diff_axis(g, a, in, comp[static_cast<std::size_t>(a)].data(), scheme);
    }
    return comp;
}

struct Buffers {
    std::vector<double> r, term, aux;
    explicit Buffers(std::size_t n) : r(n), term(n), aux(n) {}
};

// |xi_y| per cell from the y components.
void y_norm_array(const Grid& g, const std::vector<std::vector<double>>& comp,
                  std::vector<double>& r) {
    const auto& kb = kernels::active();
    kb.fill(r.data(), 0.0, r.size());
    for (int j = 0; j < g.codim(); ++j)
        kb.sq_accum(r.data(), comp[static_cast<std::size_t>(g.y_axis_begin() + j)].data(),
                    r.size());
    kb.sqrt_inplace(r.data(), r.size());
}

// Two forms share the piece loop: the integrand itself (term seeded with the
// affine offset c_j) and its 1-homogeneous lift, where c_j only enters
// through -c_j * min(xi_t, 0) and the offset must stay out.
void max_affine_values(const Grid& g,
                       const std::vector<std::vector<double>>& comp,
                       const std::vector<AffinePiece>& pieces, int xdim,
                       bool lift_form, const double* tneg,
                       std::vector<double>& out, Buffers& b) {
    const auto& kb = kernels::active();
    if (xdim != g.x_dims())
        throw std::invalid_argument("integrand x-dim does not match grid");
    y_norm_array(g, comp, b.r);
    kb.fill(out.data(), 0.0, out.size());
    for (const auto& p : pieces) {
        kb.fill(b.term.data(), lift_form ? 0.0 : p.c, b.term.size());
        for (int i = 0; i < xdim; ++i)
            kb.fma_tap(b.term.data(), comp[static_cast<std::size_t>(i)].data(),
                       p.a[static_cast<std::size_t>(i)], b.term.size());
        kb.fma_tap(b.term.data(), b.r.data(), p.b, b.term.size());
        if (lift_form && tneg != nullptr)
            kb.fma_tap(b.term.data(), tneg, -p.c, b.term.size());
        kb.max_into(out.data(), b.term.data(), out.size());
    }
}

void power_values(const Grid& g, const std::vector<std::vector<double>>& comp,
                  double alpha, double beta, double p, std::vector<double>& out,
                  Buffers& b) {
    const auto& kb = kernels::active();
    const std::size_t n = out.size();
    // b.aux = |xi_x|^2, b.r = |xi_y|^2
    kb.fill(b.aux.data(), 0.0, n);
    for (int i = 0; i < g.x_dims(); ++i)
        kb.sq_accum(b.aux.data(), comp[static_cast<std::size_t>(i)].data(), n);
    kb.fill(b.r.data(), 0.0, n);
    for (int j = 0; j < g.codim(); ++j)
        kb.sq_accum(b.r.data(), comp[static_cast<std::size_t>(g.y_axis_begin() + j)].data(), n);
    if (p == 2.0) {
        kb.scale(out.data(), b.aux.data(), alpha, n);
        kb.fma_tap(out.data(), b.r.data(), beta, n);
        return;
    }
    kb.sqrt_inplace(b.aux.data(), n);
    kb.sqrt_inplace(b.r.data(), n);
    if (p == 1.0) {
        kb.scale(out.data(), b.aux.data(), alpha, n);
        kb.fma_tap(out.data(), b.r.data(), beta, n);
        return;
    }
    // general exponent: scalar on every backend so results never depend on
    // the dispatch choice
    for (std::size_t i = 0; i < n; ++i)
        out[i] = alpha * std::pow(b.aux[i], p) + beta * std::pow(b.r[i], p);
}

// Slice sums in canonical order: row-major sequential per slice, pairwise
// tree across slices. Region (if any) filters by x ordinal.
double sum_sliced(const Grid& g, const std::vector<double>& values,
                  const Region* region) {
    if (region != nullptr &&
        static_cast<std::int64_t>(region->size()) != g.x_count())
        throw std::invalid_argument("region size does not match the x-block");
    const auto& offs = g.y_offsets();
    std::vector<double> per_slice(static_cast<std::size_t>(g.slice_count()), 0.0);
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        if (region != nullptr &&
            (*region)[static_cast<std::size_t>(g.x_of_slice(s))] == 0)
            return;
        const std::int64_t base = g.slice_base(s);
        double acc = 0.0;
        for (std::int64_t off : offs)
            acc += values[static_cast<std::size_t>(base + off)];
        per_slice[static_cast<std::size_t>(s)] = acc;
    });
    return pairwise_sum(per_slice);
}

std::vector<double> surface_values(const Grid& g,
                                   const std::vector<std::vector<double>>& comp,
                                   const SurfaceIntegrand& F) {
    const auto& kb = kernels::active();
    const std::size_t n = static_cast<std::size_t>(g.cell_count());
    std::vector<double> out(n);
    Buffers b(n);
    const int ta = g.t_axis();

    if (F.is_euclidean()) {
        kb.fill(out.data(), 0.0, n);
        for (int a = 0; a < g.rank(); ++a)
            kb.sq_accum(out.data(), comp[static_cast<std::size_t>(a)].data(), n);
        kb.sqrt_inplace(out.data(), n);
        return out;
    }
    if (F.is_y_norm()) {
        y_norm_array(g, comp, b.r);
        out = b.r;
        return out;
    }
    if (const auto* ma = F.as_max_affine()) {
        const double* tneg = nullptr;
        if (ta >= 0) {
            // b.aux is untouched by max_affine_values, so it can hold min(t, 0)
            kb.clamp_nonpos(b.aux.data(), comp[static_cast<std::size_t>(ta)].data(), n);
            tneg = b.aux.data();
        }
        max_affine_values(g, comp, ma->pieces, ma->xdim, true, tneg, out, b);
        return out;
    }
    // power lift and custom evaluators: per-cell scalar loop (identical on
    // every backend)
    const int nx = g.x_dims();
    std::vector<double> xs(static_cast<std::size_t>(nx));
    y_norm_array(g, comp, b.r);
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < nx; ++a)
            xs[static_cast<std::size_t>(a)] = comp[static_cast<std::size_t>(a)][i];
        const double t = ta >= 0 ? comp[static_cast<std::size_t>(ta)][i] : 0.0;
        out[i] = F.eval(xs, b.r[i], t);
    }
    return out;
}

std::vector<double> gaussian_taps(double width) {
    const int radius = static_cast<int>(std::ceil(4.0 * width));
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    for (int t = -radius; t <= radius; ++t)
        w[static_cast<std::size_t>(t + radius)] =
            std::exp(-0.5 * (static_cast<double>(t) * static_cast<double>(t)) /
                     (width * width));
    double sum = 0.0;
    for (double v : w) sum += v;
    for (double& v : w) v /= sum;
    return w;
}

void convolve_axis(const Grid& g, int axis, const std::vector<double>& taps,
                   const double* in, double* out) {
    const auto& kb = kernels::active();
    const std::int64_t s = g.stride(axis);
    const std::int64_t slab = s * g.dim(axis);
    const int radius = (static_cast<int>(taps.size()) - 1) / 2;
    for_each_slab(g, axis, [&](std::int64_t base, std::int64_t len) {
        double* dst = out + base;
        const double* src = in + base;
        kb.fill(dst, 0.0, static_cast<std::size_t>(len));
        for (int t = 0; t < static_cast<int>(taps.size()); ++t) {
            const std::int64_t off = static_cast<std::int64_t>(t - radius) * s;
            const std::int64_t lo = off < 0 ? -off : 0;
            const std::int64_t hi = off > 0 ? len - off : len;
            if (hi <= lo) continue;
            kb.fma_tap(dst + lo, src + lo + off, taps[static_cast<std::size_t>(t)],
                       static_cast<std::size_t>(hi - lo));
        }
        (void)slab;
    });
}

std::vector<double> mollify(const Grid& g, const VoxelSet& e, double width) {
    std::vector<double> a(static_cast<std::size_t>(g.cell_count()));
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = e.mask()[i] != 0 ? 1.0 : 0.0;
    std::vector<double> bbuf(a.size());
    const std::vector<double> taps = gaussian_taps(width);
    double* cur = a.data();
    double* nxt = bbuf.data();
    for (int axis = 0; axis < g.rank(); ++axis) {
        convolve_axis(g, axis, taps, cur, nxt);
        std::swap(cur, nxt);
    }
    if (cur != a.data()) a.swap(bbuf);
    return a;
}

} // namespace

const char* to_string(DiffScheme s) {
    return s == DiffScheme::forward ? "forward" : "central";
}

const char* to_string(SurfaceScheme s) {
    return s == SurfaceScheme::faces ? "faces" : "mollified";
}

GradientField gradient(const GridFunction& u, DiffScheme scheme) {
    return GradientField{u.grid(), scheme,
                         gradient_arrays(u.grid(), u.values().data(), scheme)};
}

std::vector<double> integrand_values(const GradientField& grad,
                                     const Integrand& f) {
    const Grid& g = grad.grid;
    if (g.has_t_axis())
        throw std::invalid_argument("integrand_values: t-grids take surface integrands");
    const std::size_t n = static_cast<std::size_t>(g.cell_count());
    std::vector<double> out(n);
    Buffers b(n);
    if (const auto* ra = std::get_if<RadialAffineIntegrand>(&f)) {
        max_affine_values(g, grad.comp, ra->pieces(), ra->xdim(), false, nullptr,
                          out, b);
    } else {
        const auto& pw = std::get<PowerIntegrand>(f);
        power_values(g, grad.comp, pw.alpha(), pw.beta(), pw.p(), out, b);
    }
    return out;
}

double dirichlet_integral(const GridFunction& u, const Integrand& f,
                          DiffScheme scheme, const Region* region) {
    const GradientField grad = gradient(u, scheme);
    const std::vector<double> fv = integrand_values(grad, f);
    for (double v : fv)
        if (std::isinf(v))
            throw std::domain_error("dirichlet_integral: infinite integrand value");
    return sum_sliced(u.grid(), fv, region) * u.grid().cell_volume();
}

double bv_functional(const GridFunction& u, const Integrand& f,
                     const Region* region) {
    if (!finite_recession(f)) throw std::domain_error("recession infinite");
    return dirichlet_integral(u, f, DiffScheme::forward, region);
}

double surface_energy_faces(const VoxelSet& e, const SurfaceIntegrand& F,
                            const Region* region) {
    const Grid& g = e.grid();
    if (region != nullptr &&
        static_cast<std::int64_t>(region->size()) != g.x_count())
        throw std::invalid_argument("region size does not match the x-block");
    const int nx = g.x_dims();
    const int k = g.codim();
    const int ta = g.t_axis();

    // F at the signed unit axis vectors
    std::vector<double> xs(static_cast<std::size_t>(nx), 0.0);
    std::vector<double> face_value(static_cast<std::size_t>(g.rank()) * 2);
    for (int a = 0; a < g.rank(); ++a) {
        for (int sign = 0; sign < 2; ++sign) {
            const double sv = sign == 0 ? 1.0 : -1.0;
            double v;
            if (a < nx) {
                std::fill(xs.begin(), xs.end(), 0.0);
                xs[static_cast<std::size_t>(a)] = sv;
                v = F.eval(xs, 0.0, 0.0);
                xs[static_cast<std::size_t>(a)] = 0.0;
            } else if (a < nx + k) {
                v = F.eval(std::vector<double>(static_cast<std::size_t>(nx), 0.0), 1.0, 0.0);
            } else {
                v = F.eval(std::vector<double>(static_cast<std::size_t>(nx), 0.0), 0.0, sv);
            }
            face_value[static_cast<std::size_t>(a) * 2 + static_cast<std::size_t>(sign)] = v;
        }
        (void)ta;
    }

    // x ordinal per cell, only needed for region filtering
    std::vector<std::int32_t> x_ord;
    if (region != nullptr) {
        x_ord.resize(static_cast<std::size_t>(g.cell_count()));
        for (std::int64_t s = 0; s < g.slice_count(); ++s) {
            const std::int64_t base = g.slice_base(s);
            const std::int32_t xo = static_cast<std::int32_t>(g.x_of_slice(s));
            for (std::int64_t off : g.y_offsets())
                x_ord[static_cast<std::size_t>(base + off)] = xo;
        }
    }

    const auto mask = e.mask();
    double total = 0.0;
    for (int a = 0; a < g.rank(); ++a) {
        const std::int64_t s = g.stride(a);
        const int d = g.dim(a);
        const double face_area = g.cell_volume() / g.spacing(a);
        const double v_into_lower = face_value[static_cast<std::size_t>(a) * 2 + 1]; // -e_a
        const double v_into_upper = face_value[static_cast<std::size_t>(a) * 2 + 0]; // +e_a
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            const int ca = static_cast<int>((i / s) % d);
            const bool inside = mask[static_cast<std::size_t>(i)] != 0;
            const bool upper_inside =
                ca + 1 < d && mask[static_cast<std::size_t>(i + s)] != 0;
            if (inside != upper_inside) {
                // the face above cell i; the inner normal points toward the
                // inside cell
                const std::int64_t owner = inside ? i : i + s;
                if (region == nullptr ||
                    (*region)[static_cast<std::size_t>(x_ord[static_cast<std::size_t>(owner)])] != 0) {
                    const double v = inside ? v_into_lower : v_into_upper;
                    if (std::isinf(v))
                        throw std::domain_error("surface integrand infinite on a needed axis direction");
                    total += v * face_area;
                }
            }
            if (ca == 0 && inside) {
                // boundary face below the first cell; outside is empty
                if (region == nullptr ||
                    (*region)[static_cast<std::size_t>(x_ord[static_cast<std::size_t>(i)])] != 0) {
                    const double v = v_into_upper;
                    if (std::isinf(v))
                        throw std::domain_error("surface integrand infinite on a needed axis direction");
                    total += v * face_area;
                }
            }
        }
    }
    return total;
}

double surface_energy_mollified(const VoxelSet& e, const SurfaceIntegrand& F,
                                double width_cells, const Region* region) {
    if (!(width_cells >= 1.0))
        throw std::invalid_argument("mollifier width must be at least one cell");
    const Grid& g = e.grid();
    const std::vector<double> chi = mollify(g, e, width_cells);
    const std::vector<std::vector<double>> comp =
        gradient_arrays(g, chi.data(), DiffScheme::central);
    const std::vector<double> fv = surface_values(g, comp, F);
    if (F.may_be_infinite()) {
        for (double v : fv)
            if (std::isinf(v) || std::isnan(v)) return kInf;
    }
    return sum_sliced(g, fv, region) * g.cell_volume();
}

std::vector<SurfaceSample> surface_samples(const VoxelSet& e,
                                           SurfaceScheme scheme,
                                           double width_cells,
                                           double grad_cutoff) {
    const Grid& g = e.grid();
    std::vector<SurfaceSample> samples;
    if (scheme == SurfaceScheme::faces) {
        const auto mask = e.mask();
        for (int a = 0; a < g.rank(); ++a) {
            const std::int64_t s = g.stride(a);
            const int d = g.dim(a);
            const double face_area = g.cell_volume() / g.spacing(a);
            for (std::int64_t i = 0; i < g.cell_count(); ++i) {
                const int ca = static_cast<int>((i / s) % d);
                const bool inside = mask[static_cast<std::size_t>(i)] != 0;
                const bool upper_inside =
                    ca + 1 < d && mask[static_cast<std::size_t>(i + s)] != 0;
                auto emit = [&](std::int64_t cell, double sign) {
                    SurfaceSample smp;
                    smp.cell = cell;
                    smp.normal.assign(static_cast<std::size_t>(g.rank()), 0.0);
                    smp.normal[static_cast<std::size_t>(a)] = sign;
                    smp.weight = face_area;
                    samples.push_back(std::move(smp));
                };
                if (inside != upper_inside)
                    emit(inside ? i : i + s, inside ? -1.0 : 1.0);
                if (ca == 0 && inside) emit(i, 1.0);
            }
        }
        return samples;
    }
    if (!(width_cells >= 1.0))
        throw std::invalid_argument("mollifier width must be at least one cell");
    const std::vector<double> chi = mollify(g, e, width_cells);
    const std::vector<std::vector<double>> comp =
        gradient_arrays(g, chi.data(), DiffScheme::central);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        double n2 = 0.0;
        for (int a = 0; a < g.rank(); ++a) {
            const double c = comp[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
            n2 += c * c;
        }
        const double gn = std::sqrt(n2);
        if (!(gn > grad_cutoff) || gn == 0.0) continue;
        SurfaceSample smp;
        smp.cell = i;
        smp.normal.resize(static_cast<std::size_t>(g.rank()));
        for (int a = 0; a < g.rank(); ++a)
            smp.normal[static_cast<std::size_t>(a)] =
                comp[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] / gn;
        smp.weight = gn * g.cell_volume();
        samples.push_back(std::move(smp));
    }
    return samples;
}

double subgraph_energy(const GridFunction& u, const Integrand& f,
                       double t_spacing, double width_cells) {
    const double maxu = u.max_value();
    const int pad = static_cast<int>(std::ceil(4.0 * width_cells)) + 2;
    const int levels =
        static_cast<int>(std::ceil(maxu / t_spacing)) + pad;
    const VoxelSet s = subgraph(u, levels, t_spacing);
    return surface_energy_mollified(s, lift(f), width_cells);
}

} // namespace steiner
