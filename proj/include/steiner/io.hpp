#pragma once

#include "steiner/grid.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace steiner {

// STNR1: 5-byte magic "STNR1", u8 kind (0 = function, 1 = set), u16 n (spatial
// dims), u16 k, u8 has_t, then (n + has_t) axis records of u32 count + f64
// spacing, then the payload row-major: f64 per cell for functions, one 0/1
// byte per cell for sets. All integers and floats little-endian.

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StnrHeader {
    int kind = 0;   // 0 function, 1 set
    int n = 0;
    int k = 0;
    bool has_t = false;
    std::vector<int> dims;
    std::vector<double> spacing;
};

void save(const GridFunction& u, const std::string& path);
void save(const VoxelSet& e, const std::string& path);

using LoadedObject = std::variant<GridFunction, VoxelSet>;
LoadedObject load(const std::string& path);

GridFunction load_function(const std::string& path);
VoxelSet load_voxel_set(const std::string& path);

StnrHeader inspect_stnr(const std::string& path);

} // namespace steiner
