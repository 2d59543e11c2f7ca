#pragma once

#include "steiner/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steiner {

// Builtin test families. Functions are non-negative and (except the gaussian
// tail) vanish on the outermost y-layer, matching the zero-trace-in-y class
// the inequalities are stated for.
//
//   cone            amp * max(0, 1 - |y - c| / r), optionally scaled by the
//                   first x coordinate (x_scale) for the lambda-derivative
//                   closed forms
//   tent            per-axis product of 1-d tents
//   radial_gaussian amp * exp(-|y - c|^2 / (2 scale^2))
//   offcenter_ball  cone profile at an off-center y (function) or the set
//                   {|y - c| <= r}
//   two_balls       set: union of two radius-r balls split along the first
//                   y-axis by `separation`
//   plateau         radial profile with a flat annulus at `level` between the
//                   peak and the support edge
//   random_smooth   seeded positive Gaussian bumps, tapered to zero near the
//                   y-boundary
//   box             set: axis-aligned cell-index box, exactly rasterized
struct GeneratorSpec {
    std::string name;
    std::vector<double> center;   // y offset of the profile (defaults to 0)
    double radius = 0.5;
    double level = 0.5;           // plateau level / set threshold
    double width = 0.15;          // plateau annulus width
    double scale = 0.25;          // gaussian / bump width scale
    double amplitude = 1.0;
    double separation = 0.0;      // two_balls center distance
    int bumps = 6;                // random_smooth component count
    bool x_scale = false;
    std::uint64_t seed = 1;
};

GridFunction make_function(const Grid& grid, const GeneratorSpec& spec);
VoxelSet make_set(const Grid& grid, const GeneratorSpec& spec);

bool generator_makes_set(const std::string& name);

} // namespace steiner
