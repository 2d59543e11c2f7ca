#include "steiner/generators.hpp"

#include "steiner/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace steiner {

namespace {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

// Evaluates fn(x_coords, y_coords) at every cell center.
GridFunction build(const Grid& g,
                   const std::function<double(std::span<const double>,
                                              std::span<const double>)>& fn) {
    const int nx = g.x_dims();
    const int k = g.codim();
    std::vector<double> values(static_cast<std::size_t>(g.cell_count()));
    std::vector<int> coord(static_cast<std::size_t>(g.rank()), 0);
    std::vector<double> xs(static_cast<std::size_t>(nx));
    std::vector<double> ys(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        for (int a = 0; a < nx; ++a)
            xs[static_cast<std::size_t>(a)] = g.center(a, coord[static_cast<std::size_t>(a)]);
        for (int a = 0; a < k; ++a)
            ys[static_cast<std::size_t>(a)] =
                g.y_center(a, coord[static_cast<std::size_t>(nx + a)]);
        double v = fn(xs, ys);
        if (v < 0.0) v = 0.0;
        values[static_cast<std::size_t>(i)] = v;
        for (int a = g.rank() - 1; a >= 0; --a) {
            if (++coord[static_cast<std::size_t>(a)] < g.dim(a)) break;
            coord[static_cast<std::size_t>(a)] = 0;
        }
    }
    return GridFunction(g, std::move(values));
}

std::vector<double> centered(const GeneratorSpec& spec, int k) {
    std::vector<double> c = spec.center;
    c.resize(static_cast<std::size_t>(k), 0.0);
    return c;
}

double dist_y(std::span<const double> ys, std::span<const double> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double d = ys[i] - c[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Smooth cutoff that is exactly 0 on the outermost y-layer; margin is two
// cells or 15% of the half-extent, whichever is larger.
double y_taper(const Grid& g, std::span<const double> ys) {
    double t = 1.0;
    for (int a = 0; a < g.codim(); ++a) {
        const int axis = g.y_axis_begin() + a;
        const double edge = std::abs(g.y_center(a, 0));   // outermost center
        if (edge == 0.0) continue;                        // single-cell axis
        const double h = g.spacing(axis);
        const double margin = std::max(2.0 * h, 0.15 * edge);
        t *= smoothstep((edge - std::abs(ys[static_cast<std::size_t>(a)])) / margin);
    }
    return t;
}

// Peak 1 at the center, flat annulus at `level` on [r1, r1+width], linear
// back down to 0 at `radius`.
double plateau_profile(double rho, const GeneratorSpec& spec) {
    const double R = spec.radius;
    const double w = std::clamp(spec.width, 0.0, 0.8 * R);
    const double r1 = 0.5 * (R - w);
    const double r2 = r1 + w;
    if (rho >= R) return 0.0;
    if (rho <= r1) return 1.0 + (spec.level - 1.0) * (rho / r1);
    if (rho <= r2) return spec.level;
    return spec.level * (R - rho) / (R - r2);
}

VoxelSet balls_set(const Grid& g, const std::vector<std::vector<double>>& centers,
                   double radius) {
    const int k = g.codim();
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.cell_count()), 0);
    std::vector<int> coord(static_cast<std::size_t>(g.rank()), 0);
    std::vector<double> ys(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        for (int a = 0; a < k; ++a)
            ys[static_cast<std::size_t>(a)] =
                g.y_center(a, coord[static_cast<std::size_t>(g.x_dims() + a)]);
        for (const auto& c : centers)
            if (dist_y(ys, c) <= radius) {
                mask[static_cast<std::size_t>(i)] = 1;
                break;
            }
        for (int a = g.rank() - 1; a >= 0; --a) {
            if (++coord[static_cast<std::size_t>(a)] < g.dim(a)) break;
            coord[static_cast<std::size_t>(a)] = 0;
        }
    }
    return VoxelSet(g, std::move(mask));
}

} // namespace

bool generator_makes_set(const std::string& name) {
    return name == "box" || name == "two_balls" || name == "offcenter_ball";
}

GridFunction make_function(const Grid& g, const GeneratorSpec& spec) {
    const int k = g.codim();
    const std::vector<double> c = centered(spec, k);
    const double amp = spec.amplitude;

    auto xfactor = [&](std::span<const double> xs) {
        if (!spec.x_scale) return 1.0;
        return xs.empty() ? 1.0 : std::max(0.0, xs[0]);
    };

    if (spec.name == "cone" || spec.name == "offcenter_ball") {
        return build(g, [&](std::span<const double> xs, std::span<const double> ys) {
            const double rho = dist_y(ys, c);
            return amp * xfactor(xs) * std::max(0.0, 1.0 - rho / spec.radius);
        });
    }
    if (spec.name == "tent") {
        return build(g, [&](std::span<const double> xs, std::span<const double> ys) {
            double v = amp * xfactor(xs);
            for (std::size_t a = 0; a < ys.size(); ++a)
                v *= std::max(0.0, 1.0 - std::abs(ys[a] - c[a]) / spec.radius);
            return v;
        });
    }
    if (spec.name == "radial_gaussian") {
        const double s2 = 2.0 * spec.scale * spec.scale;
        return build(g, [&](std::span<const double> xs, std::span<const double> ys) {
            const double rho = dist_y(ys, c);
            return amp * xfactor(xs) * std::exp(-rho * rho / s2);
        });
    }
    if (spec.name == "plateau") {
        return build(g, [&](std::span<const double> xs, std::span<const double> ys) {
            return amp * xfactor(xs) * plateau_profile(dist_y(ys, c), spec);
        });
    }
    if (spec.name == "random_smooth") {
        // positive bumps, centers biased inside, tapered to zero in y
        Rng rng(spec.seed);
        const int nfree = g.x_dims() + k;
        struct Bump {
            std::vector<double> pos;
            double w, s;
        };
        std::vector<Bump> bumps(static_cast<std::size_t>(std::max(1, spec.bumps)));
        double min_halfextent = std::numeric_limits<double>::max();
        for (int a = 0; a < g.rank(); ++a) {
            if (a == g.t_axis()) continue;
            const double he = 0.5 * g.dim(a) * g.spacing(a);
            min_halfextent = std::min(min_halfextent, he);
        }
        for (auto& b : bumps) {
            b.pos.resize(static_cast<std::size_t>(nfree));
            for (int a = 0; a < g.x_dims(); ++a) {
                const double lo = 0.15 * g.dim(a) * g.spacing(a);
                const double hi = 0.85 * g.dim(a) * g.spacing(a);
                b.pos[static_cast<std::size_t>(a)] = rng.uniform(lo, hi);
            }
            for (int a = 0; a < k; ++a) {
                const double edge = std::abs(g.y_center(a, 0));
                b.pos[static_cast<std::size_t>(g.x_dims() + a)] =
                    rng.uniform(-0.6 * edge, 0.6 * edge);
            }
            b.w = rng.uniform(0.2, 1.0) * spec.amplitude;
            b.s = rng.uniform(0.5, 1.0) * spec.scale * min_halfextent;
        }
        return build(g, [&](std::span<const double> xs, std::span<const double> ys) {
            double v = 0.0;
            for (const auto& b : bumps) {
                double d2 = 0.0;
                for (std::size_t a = 0; a < xs.size(); ++a) {
                    const double d = xs[a] - b.pos[a];
                    d2 += d * d;
                }
                for (std::size_t a = 0; a < ys.size(); ++a) {
                    const double d = ys[a] - b.pos[xs.size() + a];
                    d2 += d * d;
                }
                v += b.w * std::exp(-d2 / (2.0 * b.s * b.s));
            }
            return v * y_taper(g, ys);
        });
    }
    if (generator_makes_set(spec.name))
        throw std::invalid_argument("generator '" + spec.name +
                                    "' builds a set, not a function");
    throw std::invalid_argument("unknown generator: " + spec.name);
}

VoxelSet make_set(const Grid& g, const GeneratorSpec& spec) {
    const int k = g.codim();
    const std::vector<double> c = centered(spec, k);

    auto threshold_set = [&](const GridFunction& u, double level) {
        std::vector<std::uint8_t> mask(u.values().size());
        for (std::size_t i = 0; i < mask.size(); ++i)
            mask[i] = u.values()[i] > level ? 1 : 0;
        return VoxelSet(g, std::move(mask));
    };

    if (spec.name == "offcenter_ball") return balls_set(g, {c}, spec.radius);
    if (spec.name == "two_balls") {
        const double sep = spec.separation > 0.0 ? spec.separation : 2.5 * spec.radius;
        std::vector<double> c1 = c, c2 = c;
        c1[0] -= 0.5 * sep;
        c2[0] += 0.5 * sep;
        return balls_set(g, {c1, c2}, spec.radius);
    }
    if (spec.name == "box") {
        // axis-aligned box of half-width `radius`: y axes around `center`,
        // x axes around the domain midpoint; rasterized by cell-center
        // membership so the boundary lands on cell faces
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.cell_count()), 0);
        std::vector<int> coord(static_cast<std::size_t>(g.rank()), 0);
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            bool inside = true;
            for (int a = 0; a < g.x_dims() && inside; ++a) {
                const double mid = 0.5 * g.dim(a) * g.spacing(a);
                const double x = g.center(a, coord[static_cast<std::size_t>(a)]);
                inside = std::abs(x - mid) <= spec.radius;
            }
            for (int a = 0; a < k && inside; ++a) {
                const double y =
                    g.y_center(a, coord[static_cast<std::size_t>(g.x_dims() + a)]);
                inside = std::abs(y - c[static_cast<std::size_t>(a)]) <= spec.radius;
            }
            mask[static_cast<std::size_t>(i)] = inside ? 1 : 0;
            for (int a = g.rank() - 1; a >= 0; --a) {
                if (++coord[static_cast<std::size_t>(a)] < g.dim(a)) break;
                coord[static_cast<std::size_t>(a)] = 0;
            }
        }
        return VoxelSet(g, std::move(mask));
    }
    // function generators define sets through a superlevel threshold
    return threshold_set(make_function(g, spec), spec.level);
}

} // namespace steiner
