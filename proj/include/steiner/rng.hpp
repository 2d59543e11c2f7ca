#pragma once

#include <cstdint>
#include <random>

namespace steiner {

// mt19937_64 with fixed transforms. std::uniform_real_distribution is
// implementation-defined, so outputs go through our own mapping to keep
// seeded runs byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    double unit() {   // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    std::int64_t index(std::int64_t n) {   // [0, n)
        return static_cast<std::int64_t>(unit() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace steiner
