#pragma once

#include "steiner/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace steiner {

// Permutation of the y-block sorted ascending by (|y_center|, then
// lexicographic coordinate). Mirror cells +-y tie exactly (centered
// coordinates negate exactly in IEEE), so they are always adjacent.
// Deterministic; independent of construction order and thread count.
class CellOrder {
public:
    explicit CellOrder(const Grid& grid);

    std::span<const std::int32_t> order() const { return order_; }
    std::int64_t size() const { return static_cast<std::int64_t>(order_.size()); }
    // Squared center norm of the y-cell at order position i.
    double norm2_at(std::int64_t position) const {
        return norm2_[static_cast<std::size_t>(order_[static_cast<std::size_t>(position)])];
    }

private:
    std::vector<std::int32_t> order_;  // y ordinals, nearest-to-0 first
    std::vector<double> norm2_;        // per y ordinal
};

// lambda_u per slice on a fixed threshold grid; thresholds strictly
// increasing, lambda in k-volume units, non-increasing in t per slice.
struct DistributionTable {
    std::vector<double> thresholds;
    std::int64_t slices = 0;
    std::vector<double> lambda;   // [slice * thresholds.size() + ti]

    double at(std::int64_t slice, std::size_t ti) const {
        return lambda[static_cast<std::size_t>(slice) * thresholds.size() + ti];
    }
};

// One slice of the Schwarz (symmetric decreasing) rearrangement: sort the
// values descending, assign the i-th largest to the i-th cell of the order.
// Ties keep their gathered order (stable), so the result is bit-reproducible.
std::vector<double> schwarz_slice(std::span<const double> values,
                                  const CellOrder& order);

// u^sigma: schwarz_slice applied to every (x[,t]) column independently.
GridFunction steiner_rearrange(const GridFunction& u);

// E^sigma by quantile rasterization: a column with m cells in E becomes the
// first m cells of the order, which preserves section counts exactly.
VoxelSet steiner_symmetrize_set(const VoxelSet& e);

DistributionTable distribution(const GridFunction& u,
                               std::vector<double> thresholds);

// M(x): per-slice max (discrete essential sup; 0 on empty-support slices).
std::vector<double> slice_max(const GridFunction& u);

// 1-dimensional symmetric decreasing rearrangement along one y-axis
// (local index in [0, k)), all other coordinates frozen.
GridFunction codim1_symmetrize(const GridFunction& u, int local_y_axis);

// S_u on the grid extended by a t-axis: voxel (x, y, j) is inside exactly
// when (j + 1/2) * t_spacing < u(x, y). Sets *truncated when
// t_levels * t_spacing < max(u).
VoxelSet subgraph(const GridFunction& u, int t_levels, double t_spacing,
                  bool* truncated = nullptr);

} // namespace steiner
