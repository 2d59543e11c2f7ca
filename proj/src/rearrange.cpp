#include "steiner/rearrange.hpp"

#include "steiner/kernels.hpp"
#include "steiner/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace steiner {

CellOrder::CellOrder(const Grid& grid) {
    const std::int64_t m = grid.y_count();
    const int k = grid.codim();
    norm2_.resize(static_cast<std::size_t>(m));
    std::vector<std::int32_t> coords(static_cast<std::size_t>(m) *
                                     static_cast<std::size_t>(k));
    {
        std::vector<int> yc(static_cast<std::size_t>(k), 0);
        for (std::int64_t j = 0; j < m; ++j) {
            double n2 = 0.0;
            for (int a = 0; a < k; ++a) {
                const double c = grid.y_center(a, yc[static_cast<std::size_t>(a)]);
                n2 += c * c;
                coords[static_cast<std::size_t>(j) * static_cast<std::size_t>(k) +
                       static_cast<std::size_t>(a)] =
                    static_cast<std::int32_t>(yc[static_cast<std::size_t>(a)]);
            }
            norm2_[static_cast<std::size_t>(j)] = n2;
            for (int a = k - 1; a >= 0; --a) {
                if (++yc[static_cast<std::size_t>(a)] < grid.dim(grid.y_axis_begin() + a)) break;
                yc[static_cast<std::size_t>(a)] = 0;
            }
        }
    }
    order_.resize(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j)
        order_[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(j);
    std::sort(order_.begin(), order_.end(),
              [&](std::int32_t a, std::int32_t b) {
                  const double na = norm2_[static_cast<std::size_t>(a)];
                  const double nb = norm2_[static_cast<std::size_t>(b)];
                  if (na != nb) return na < nb;
                  const std::int32_t* ca =
                      coords.data() + static_cast<std::size_t>(a) * static_cast<std::size_t>(k);
                  const std::int32_t* cb =
                      coords.data() + static_cast<std::size_t>(b) * static_cast<std::size_t>(k);
                  for (int i = 0; i < k; ++i)
                      if (ca[i] != cb[i]) return ca[i] < cb[i];
                  return false;
              });
}

namespace {

void schwarz_buffer(std::vector<double>& buf) {
    // descending, stable: ties keep their gathered (order-position) sequence
    std::stable_sort(buf.begin(), buf.end(), std::greater<double>());
}

void check_nonnegative(std::span<const double> values) {
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("schwarz_slice: negative input");
}

} // namespace

std::vector<double> schwarz_slice(std::span<const double> values,
                                  const CellOrder& order) {
    if (static_cast<std::int64_t>(values.size()) != order.size())
        throw std::invalid_argument("schwarz_slice: size mismatch");
    check_nonnegative(values);
    const auto ord = order.order();
    std::vector<double> buf(values.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = values[static_cast<std::size_t>(ord[i])];
    schwarz_buffer(buf);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
        out[static_cast<std::size_t>(ord[i])] = buf[i];
    return out;
}

GridFunction steiner_rearrange(const GridFunction& u) {
    const Grid& g = u.grid();
    const CellOrder order(g);
    const auto ord = order.order();
    const auto& offs = g.y_offsets();
    std::vector<double> out(u.values().size());
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        thread_local std::vector<double> buf;
        buf.resize(static_cast<std::size_t>(g.y_count()));
        for (std::size_t i = 0; i < buf.size(); ++i)
            buf[i] = u.value(base + offs[static_cast<std::size_t>(ord[i])]);
        schwarz_buffer(buf);
        for (std::size_t i = 0; i < buf.size(); ++i)
            out[static_cast<std::size_t>(base + offs[static_cast<std::size_t>(ord[i])])] = buf[i];
    });
    return GridFunction(g, std::move(out));
}

VoxelSet steiner_symmetrize_set(const VoxelSet& e) {
    const Grid& g = e.grid();
    const CellOrder order(g);
    const auto ord = order.order();
    const auto& offs = g.y_offsets();
    std::vector<std::uint8_t> out(e.mask().size(), 0);
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        std::int64_t m = 0;
        for (std::int64_t off : offs)
            m += e.mask()[static_cast<std::size_t>(base + off)];
        for (std::int64_t i = 0; i < m; ++i)
            out[static_cast<std::size_t>(base + offs[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])])] = 1;
    });
    return VoxelSet(g, std::move(out));
}

DistributionTable distribution(const GridFunction& u,
                               std::vector<double> thresholds) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] < 0.0)
            throw std::invalid_argument("distribution: negative threshold");
        if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
            throw std::invalid_argument("distribution: unsorted thresholds");
    }
    const Grid& g = u.grid();
    const auto& offs = g.y_offsets();
    const auto& kb = kernels::active();
    DistributionTable table;
    table.thresholds = std::move(thresholds);
    table.slices = g.slice_count();
    table.lambda.resize(static_cast<std::size_t>(table.slices) *
                        table.thresholds.size());
    const double yvol = g.y_cell_volume();
    parallel_for(table.slices, [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        thread_local std::vector<double> buf;
        buf.resize(static_cast<std::size_t>(g.y_count()));
        for (std::size_t i = 0; i < buf.size(); ++i)
            buf[i] = u.value(base + offs[i]);
        for (std::size_t ti = 0; ti < table.thresholds.size(); ++ti) {
            const std::int64_t c =
                kb.count_gt(buf.data(), table.thresholds[ti], buf.size());
            table.lambda[static_cast<std::size_t>(s) * table.thresholds.size() + ti] =
                static_cast<double>(c) * yvol;
        }
    });
    return table;
}

std::vector<double> slice_max(const GridFunction& u) {
    const Grid& g = u.grid();
    const auto& offs = g.y_offsets();
    std::vector<double> out(static_cast<std::size_t>(g.slice_count()), 0.0);
    parallel_for(g.slice_count(), [&](std::int64_t s) {
        const std::int64_t base = g.slice_base(s);
        double m = 0.0;
        for (std::int64_t off : offs) {
            const double v = u.value(base + off);
            m = m > v ? m : v;
        }
        out[static_cast<std::size_t>(s)] = m;
    });
    return out;
}

GridFunction codim1_symmetrize(const GridFunction& u, int local_y_axis) {
    const Grid& g = u.grid();
    if (local_y_axis < 0 || local_y_axis >= g.codim())
        throw std::invalid_argument("codim1_symmetrize: axis outside y-block");
    const int axis = g.y_axis_begin() + local_y_axis;
    const int m = g.dim(axis);
    const std::int64_t stride = g.stride(axis);

    // 1-d order along the chosen axis: |center| ascending, coordinate breaks
    // ties (the negative twin first).
    std::vector<std::int32_t> ord(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) ord[static_cast<std::size_t>(c)] = c;
    std::sort(ord.begin(), ord.end(), [&](std::int32_t a, std::int32_t b) {
        const double na = std::abs(g.center(axis, a));
        const double nb = std::abs(g.center(axis, b));
        if (na != nb) return na < nb;
        return a < b;
    });

    // enumerate lines: all cells with coord_axis == 0
    const std::int64_t lines = g.cell_count() / m;
    std::vector<double> out(u.values().size());
    parallel_for(lines, [&](std::int64_t line) {
        // decode line ordinal over axes != axis (row-major)
        std::int64_t rem = line;
        std::int64_t base = 0;
        for (int a = g.rank() - 1; a >= 0; --a) {
            if (a == axis) continue;
            base += (rem % g.dim(a)) * g.stride(a);
            rem /= g.dim(a);
        }
        thread_local std::vector<double> buf;
        buf.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            buf[static_cast<std::size_t>(i)] =
                u.value(base + static_cast<std::int64_t>(ord[static_cast<std::size_t>(i)]) * stride);
        schwarz_buffer(buf);
        for (int i = 0; i < m; ++i)
            out[static_cast<std::size_t>(base + static_cast<std::int64_t>(ord[static_cast<std::size_t>(i)]) * stride)] =
                buf[static_cast<std::size_t>(i)];
    });
    return GridFunction(g, std::move(out));
}

VoxelSet subgraph(const GridFunction& u, int t_levels, double t_spacing,
                  bool* truncated) {
    if (!(t_spacing > 0.0))
        throw std::invalid_argument("subgraph: non-positive t_spacing");
    if (t_levels < 1)
        throw std::invalid_argument("subgraph: need at least one t level");
    const Grid& g = u.grid();
    const Grid gt = g.with_t_axis(t_levels, t_spacing);
    if (truncated != nullptr)
        *truncated = static_cast<double>(t_levels) * t_spacing < u.max_value();
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(gt.cell_count()), 0);
    // t is the fastest axis, so cell layouts line up as blocks of t_levels
    parallel_for(g.cell_count(), [&](std::int64_t cell) {
        const double v = u.value(cell);
        std::uint8_t* col = mask.data() +
                            static_cast<std::size_t>(cell) * static_cast<std::size_t>(t_levels);
        for (int j = 0; j < t_levels; ++j)
            col[j] = (static_cast<double>(j) + 0.5) * t_spacing < v ? 1 : 0;
    });
    return VoxelSet(gt, std::move(mask));
}

} // namespace steiner
