#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace steiner {

// Regular lattice with an (x-block, y-block) axis split and an optional
// trailing t-axis: axes are [x_0..x_{n-k-1}, y_0..y_{k-1}, t?]. Cells are
// stored row-major (last axis fastest).
//
// Coordinate convention: y-axes are centered, cell centers at
// (c - (m-1)/2) * h, so the center set is exactly symmetric under negation
// (half-cell offset for even m). x- and t-axes start at 0 with centers at
// (c + 1/2) * h.
//
// Immutable after construction; cheap to copy (slice tables are shared).
class Grid {
public:
    Grid(std::vector<int> dims, std::vector<double> spacing, int split_k,
         bool has_t_axis = false);

    int rank() const { return static_cast<int>(dims_.size()); }
    int spatial_dims() const { return rank() - (has_t_ ? 1 : 0); }   // n
    int codim() const { return split_k_; }                           // k
    bool has_t_axis() const { return has_t_; }
    int x_dims() const { return spatial_dims() - split_k_; }
    int y_axis_begin() const { return x_dims(); }
    int t_axis() const { return has_t_ ? rank() - 1 : -1; }

    int dim(int axis) const { return dims_[static_cast<std::size_t>(axis)]; }
    double spacing(int axis) const {
        return spacing_[static_cast<std::size_t>(axis)];
    }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<double>& spacings() const { return spacing_; }

    std::int64_t cell_count() const { return cells_; }
    std::int64_t y_count() const { return y_count_; }
    std::int64_t slice_count() const { return slice_count_; }
    std::int64_t x_count() const { return x_count_; }   // x axes only, no t

    double y_cell_volume() const { return y_volume_; }
    double base_cell_volume() const { return base_volume_; }  // x (and t)
    double cell_volume() const { return base_volume_ * y_volume_; }
    double max_spacing() const;
    double max_y_spacing() const;

    std::int64_t stride(int axis) const {
        return strides_[static_cast<std::size_t>(axis)];
    }

    // Center coordinate; `axis` is a global axis index.
    double center(int axis, int coord) const;
    // Center along the j-th y-axis (j local in [0, k)).
    double y_center(int local_y_axis, int coord) const {
        return center(y_axis_begin() + local_y_axis, coord);
    }

    // Slices enumerate the non-y axes (x..., then t) row-major.
    std::int64_t slice_base(std::int64_t slice_ordinal) const;
    void slice_coords(std::int64_t slice_ordinal, std::span<int> out) const;
    std::int64_t slice_ordinal(std::span<const int> coords) const;
    // Ordinal of the x-projection of a slice (t coordinate dropped).
    std::int64_t x_of_slice(std::int64_t slice_ordinal) const;

    // Cell offsets of the y-block within a slice, row-major over y axes.
    const std::vector<std::int64_t>& y_offsets() const { return *y_offsets_; }
    void y_coords(std::int64_t y_ordinal, std::span<int> out) const;

    bool same_layout(const Grid& other) const;

    // Same grid with a t-axis appended (for subgraphs).
    Grid with_t_axis(int t_levels, double t_spacing) const;

private:
    std::vector<int> dims_;
    std::vector<double> spacing_;
    int split_k_ = 1;
    bool has_t_ = false;
    std::vector<std::int64_t> strides_;
    std::int64_t cells_ = 0, y_count_ = 0, slice_count_ = 0, x_count_ = 0;
    double y_volume_ = 1.0, base_volume_ = 1.0;
    std::shared_ptr<const std::vector<std::int64_t>> y_offsets_;
};

// Non-negative finite samples on a grid, one value per cell.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);
    static GridFunction zeros(const Grid& grid);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double value(std::int64_t cell) const {
        return values_[static_cast<std::size_t>(cell)];
    }
    double max_value() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

// Indicator on a grid: the discrete set of finite perimeter.
class VoxelSet {
public:
    VoxelSet(Grid grid, std::vector<std::uint8_t> mask);
    static VoxelSet empty(const Grid& grid);

    const Grid& grid() const { return grid_; }
    std::span<const std::uint8_t> mask() const { return mask_; }
    bool contains(std::int64_t cell) const {
        return mask_[static_cast<std::size_t>(cell)] != 0;
    }
    std::int64_t popcount() const;
    std::int64_t section_count(std::int64_t slice_ordinal) const;
    // L(x) = section_count * y-cell-volume.
    double section_measure(std::int64_t slice_ordinal) const;

private:
    Grid grid_;
    std::vector<std::uint8_t> mask_;
};

struct SliceIndex {
    std::vector<int> coords;   // non-y axes, order [x..., t]
};

// The y-block of E at the given slice (row-major over y axes).
std::vector<std::uint8_t> section(const VoxelSet& e, const SliceIndex& s);

// True exactly where section_count > 0; indexed by slice ordinal
// (pi^+ over x for plain grids, over (x,t) when a t-axis is present).
std::vector<std::uint8_t> essential_projection(const VoxelSet& e);

// {u > t} on the same grid.
VoxelSet superlevel(const GridFunction& u, double t);

} // namespace steiner
