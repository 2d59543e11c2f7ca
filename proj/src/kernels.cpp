#include "steiner/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace steiner::kernels {

const Backend& active() {
    static const Backend* chosen = [] {
        const char* env = std::getenv("STEINER_SIMD");
        if (env != nullptr && std::strcmp(env, "scalar") == 0)
            return &scalar();
        if (const Backend* v = avx2()) return v;
        return &scalar();
    }();
    return *chosen;
}

} // namespace steiner::kernels
