#include "steiner/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace steiner {

Grid::Grid(std::vector<int> dims, std::vector<double> spacing, int split_k,
           bool has_t_axis)
    : dims_(std::move(dims)), spacing_(std::move(spacing)), split_k_(split_k),
      has_t_(has_t_axis) {
    if (dims_.empty()) throw std::invalid_argument("grid: no axes");
    if (spacing_.size() != dims_.size())
        throw std::invalid_argument("grid: dims/spacing size mismatch");
    const int n = spatial_dims();
    if (n < 1) throw std::invalid_argument("grid: t-axis needs spatial axes");
    if (split_k_ < 1 || split_k_ > n)
        throw std::invalid_argument("grid: split_k out of range");
    for (int d : dims_)
        if (d < 1) throw std::invalid_argument("grid: non-positive cell count");
    for (double h : spacing_)
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::invalid_argument("grid: non-positive spacing");

    const int r = rank();
    strides_.assign(static_cast<std::size_t>(r), 1);
    cells_ = 1;
    for (int a = r - 1; a >= 0; --a) {
        strides_[static_cast<std::size_t>(a)] = cells_;
        if (cells_ > std::numeric_limits<std::int64_t>::max() / dims_[static_cast<std::size_t>(a)])
            throw std::invalid_argument("grid: dimension overflow");
        cells_ *= dims_[static_cast<std::size_t>(a)];
    }

    y_count_ = 1;
    y_volume_ = 1.0;
    for (int j = 0; j < split_k_; ++j) {
        const int a = y_axis_begin() + j;
        y_count_ *= dim(a);
        y_volume_ *= this->spacing(a);
    }
    slice_count_ = cells_ / y_count_;
    x_count_ = 1;
    base_volume_ = 1.0;
    for (int a = 0; a < x_dims(); ++a) {
        x_count_ *= dim(a);
        base_volume_ *= this->spacing(a);
    }
    if (has_t_) base_volume_ *= this->spacing(t_axis());

    auto offs = std::make_shared<std::vector<std::int64_t>>();
    offs->resize(static_cast<std::size_t>(y_count_));
    std::vector<int> yc(static_cast<std::size_t>(split_k_), 0);
    for (std::int64_t j = 0; j < y_count_; ++j) {
        std::int64_t off = 0;
        for (int a = 0; a < split_k_; ++a)
            off += static_cast<std::int64_t>(yc[static_cast<std::size_t>(a)]) *
                   stride(y_axis_begin() + a);
        (*offs)[static_cast<std::size_t>(j)] = off;
        for (int a = split_k_ - 1; a >= 0; --a) {
            if (++yc[static_cast<std::size_t>(a)] < dim(y_axis_begin() + a)) break;
            yc[static_cast<std::size_t>(a)] = 0;
        }
    }
    y_offsets_ = std::move(offs);
}

double Grid::max_spacing() const {
    double m = 0.0;
    for (double h : spacing_) m = m > h ? m : h;
    return m;
}

double Grid::max_y_spacing() const {
    double m = 0.0;
    for (int j = 0; j < split_k_; ++j) {
        const double h = spacing(y_axis_begin() + j);
        m = m > h ? m : h;
    }
    return m;
}

double Grid::center(int axis, int coord) const {
    const double h = spacing(axis);
    const bool is_y = axis >= y_axis_begin() && axis < y_axis_begin() + split_k_;
    if (is_y)
        return (static_cast<double>(coord) -
                static_cast<double>(dim(axis) - 1) * 0.5) * h;
    return (static_cast<double>(coord) + 0.5) * h;
}

std::int64_t Grid::slice_base(std::int64_t slice_ordinal) const {
    std::int64_t rem = slice_ordinal;
    std::int64_t base = 0;
    // decode row-major over non-y axes: x axes, then t
    if (has_t_) {
        const int ta = t_axis();
        base += (rem % dim(ta)) * stride(ta);
        rem /= dim(ta);
    }
    for (int a = x_dims() - 1; a >= 0; --a) {
        base += (rem % dim(a)) * stride(a);
        rem /= dim(a);
    }
    return base;
}

void Grid::slice_coords(std::int64_t slice_ordinal, std::span<int> out) const {
    std::int64_t rem = slice_ordinal;
    const int nx = x_dims();
    const int count = nx + (has_t_ ? 1 : 0);
    if (static_cast<int>(out.size()) != count)
        throw std::invalid_argument("slice_coords: bad span size");
    if (has_t_) {
        out[static_cast<std::size_t>(nx)] = static_cast<int>(rem % dim(t_axis()));
        rem /= dim(t_axis());
    }
    for (int a = nx - 1; a >= 0; --a) {
        out[static_cast<std::size_t>(a)] = static_cast<int>(rem % dim(a));
        rem /= dim(a);
    }
}

std::int64_t Grid::slice_ordinal(std::span<const int> coords) const {
    const int nx = x_dims();
    const int count = nx + (has_t_ ? 1 : 0);
    if (static_cast<int>(coords.size()) != count)
        throw std::invalid_argument("slice_ordinal: bad coordinate count");
    std::int64_t ord = 0;
    for (int a = 0; a < nx; ++a) {
        const int c = coords[static_cast<std::size_t>(a)];
        if (c < 0 || c >= dim(a))
            throw std::out_of_range("slice_ordinal: coordinate out of bounds");
        ord = ord * dim(a) + c;
    }
    if (has_t_) {
        const int c = coords[static_cast<std::size_t>(nx)];
        if (c < 0 || c >= dim(t_axis()))
            throw std::out_of_range("slice_ordinal: t coordinate out of bounds");
        ord = ord * dim(t_axis()) + c;
    }
    return ord;
}

std::int64_t Grid::x_of_slice(std::int64_t slice_ordinal) const {
    if (!has_t_) return slice_ordinal;
    return slice_ordinal / dim(t_axis());
}

void Grid::y_coords(std::int64_t y_ordinal, std::span<int> out) const {
    if (static_cast<int>(out.size()) != split_k_)
        throw std::invalid_argument("y_coords: bad span size");
    std::int64_t rem = y_ordinal;
    for (int j = split_k_ - 1; j >= 0; --j) {
        const int d = dim(y_axis_begin() + j);
        out[static_cast<std::size_t>(j)] = static_cast<int>(rem % d);
        rem /= d;
    }
}

bool Grid::same_layout(const Grid& other) const {
    return dims_ == other.dims_ && spacing_ == other.spacing_ &&
           split_k_ == other.split_k_ && has_t_ == other.has_t_;
}

Grid Grid::with_t_axis(int t_levels, double t_spacing) const {
    if (has_t_) throw std::invalid_argument("grid: already has a t-axis");
    std::vector<int> d = dims_;
    std::vector<double> h = spacing_;
    d.push_back(t_levels);
    h.push_back(t_spacing);
    return Grid(std::move(d), std::move(h), split_k_, true);
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.cell_count())
        throw std::invalid_argument("grid function: value count mismatch");
    for (double v : values_) {
        if (!std::isfinite(v))
            throw std::invalid_argument("grid function: non-finite value");
        if (v < 0.0)
            throw std::invalid_argument("grid function: negative value");
    }
}

GridFunction GridFunction::zeros(const Grid& grid) {
    return GridFunction(grid,
                        std::vector<double>(static_cast<std::size_t>(grid.cell_count()), 0.0));
}

double GridFunction::max_value() const {
    double m = 0.0;
    for (double v : values_) m = m > v ? m : v;
    return m;
}

VoxelSet::VoxelSet(Grid grid, std::vector<std::uint8_t> mask)
    : grid_(std::move(grid)), mask_(std::move(mask)) {
    if (static_cast<std::int64_t>(mask_.size()) != grid_.cell_count())
        throw std::invalid_argument("voxel set: mask size mismatch");
    for (std::uint8_t b : mask_)
        if (b > 1) throw std::invalid_argument("voxel set: mask byte not 0/1");
}

VoxelSet VoxelSet::empty(const Grid& grid) {
    return VoxelSet(grid,
                    std::vector<std::uint8_t>(static_cast<std::size_t>(grid.cell_count()), 0));
}

std::int64_t VoxelSet::popcount() const {
    std::int64_t c = 0;
    for (std::uint8_t b : mask_) c += b;
    return c;
}

std::int64_t VoxelSet::section_count(std::int64_t slice_ordinal) const {
    const std::int64_t base = grid_.slice_base(slice_ordinal);
    std::int64_t c = 0;
    for (std::int64_t off : grid_.y_offsets())
        c += mask_[static_cast<std::size_t>(base + off)];
    return c;
}

double VoxelSet::section_measure(std::int64_t slice_ordinal) const {
    return static_cast<double>(section_count(slice_ordinal)) *
           grid_.y_cell_volume();
}

std::vector<std::uint8_t> section(const VoxelSet& e, const SliceIndex& s) {
    const Grid& g = e.grid();
    const std::int64_t ord = g.slice_ordinal(s.coords);   // bounds-checked
    const std::int64_t base = g.slice_base(ord);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(g.y_count()));
    const auto& offs = g.y_offsets();
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = e.mask()[static_cast<std::size_t>(base + offs[j])];
    return out;
}

std::vector<std::uint8_t> essential_projection(const VoxelSet& e) {
    const Grid& g = e.grid();
    std::vector<std::uint8_t> out(static_cast<std::size_t>(g.slice_count()), 0);
    for (std::int64_t s = 0; s < g.slice_count(); ++s)
        out[static_cast<std::size_t>(s)] = e.section_count(s) > 0 ? 1 : 0;
    return out;
}

VoxelSet superlevel(const GridFunction& u, double t) {
    std::vector<std::uint8_t> mask(u.values().size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = u.values()[i] > t ? 1 : 0;
    return VoxelSet(u.grid(), std::move(mask));
}

} // namespace steiner
