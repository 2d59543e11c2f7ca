#pragma once

// Brute-force oracles for the property tests. These stay independent of the
// library's slicing/ordering machinery: everything is recomputed from raw
// cell coordinates.

#include "steiner/grid.hpp"
#include "steiner/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline std::vector<int> cell_coords(const steiner::Grid& g, std::int64_t cell) {
    std::vector<int> c(static_cast<std::size_t>(g.rank()));
    std::int64_t rem = cell;
    for (int a = g.rank() - 1; a >= 0; --a) {
        c[static_cast<std::size_t>(a)] = static_cast<int>(rem % g.dim(a));
        rem /= g.dim(a);
    }
    return c;
}

inline std::int64_t cell_index(const steiner::Grid& g,
                               const std::vector<int>& coords) {
    std::int64_t i = 0;
    for (int a = 0; a < g.rank(); ++a)
        i = i * g.dim(a) + coords[static_cast<std::size_t>(a)];
    return i;
}

// Exhaustive section: loop over every cell, keep those whose non-y
// coordinates match.
inline std::vector<std::uint8_t> section_brute(const steiner::VoxelSet& e,
                                               const std::vector<int>& xt) {
    const steiner::Grid& g = e.grid();
    std::vector<std::uint8_t> out;
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        const std::vector<int> c = cell_coords(g, i);
        bool match = true;
        int xi = 0;
        for (int a = 0; a < g.rank(); ++a) {
            const bool is_y =
                a >= g.y_axis_begin() && a < g.y_axis_begin() + g.codim();
            if (is_y) continue;
            if (c[static_cast<std::size_t>(a)] != xt[static_cast<std::size_t>(xi++)]) {
                match = false;
                break;
            }
        }
        if (match) out.push_back(e.mask()[static_cast<std::size_t>(i)]);
    }
    return out;
}

// The 1-d symmetric decreasing assignment oracle: positions sorted by
// (|center|, coordinate), values re-sorted descending.
inline std::vector<double> schwarz_line_brute(const std::vector<double>& line,
                                              const std::vector<double>& centers) {
    const std::size_t m = line.size();
    std::vector<std::size_t> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[i] = i;
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        const double na = std::abs(centers[a]);
        const double nb = std::abs(centers[b]);
        if (na != nb) return na < nb;
        return a < b;
    });
    std::vector<double> sorted = line;
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[pos[i]] = sorted[i];
    return out;
}

inline steiner::GridFunction random_function(const steiner::Grid& g,
                                             steiner::Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(g.cell_count()));
    for (auto& x : v) x = rng.unit();
    return steiner::GridFunction(g, std::move(v));
}

inline steiner::VoxelSet random_set(const steiner::Grid& g, steiner::Rng& rng,
                                    double fill = 0.4) {
    std::vector<std::uint8_t> m(static_cast<std::size_t>(g.cell_count()));
    for (auto& b : m) b = rng.unit() < fill ? 1 : 0;
    return steiner::VoxelSet(g, std::move(m));
}

inline double lp_norm(std::span<const double> v, double p) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

inline double lp_dist(std::span<const double> a, std::span<const double> b,
                      double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

inline double linf_dist(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace oracle
