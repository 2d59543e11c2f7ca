#include "steiner/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace steiner {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("STEINER_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && cap < 1024)
            return static_cast<int>(cap) < hw ? static_cast<int>(cap) : hw;
    }
    return hw;
}

void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& body) {
    if (count <= 0) return;
    const int workers = worker_count();
    if (workers == 1 || count == 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::int64_t chunk = count / (static_cast<std::int64_t>(workers) * 8);
    if (chunk < 1) chunk = 1;
    std::atomic<std::int64_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::int64_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::int64_t end =
                begin + chunk < count ? begin + chunk : count;
            for (std::int64_t i = begin; i < end; ++i) body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

double sum_sequential(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
}

namespace {
double pairwise(const double* v, std::size_t n) {
    if (n <= 16) return sum_sequential(v, n);
    const std::size_t half = n / 2;
    return pairwise(v, half) + pairwise(v + half, n - half);
}
} // namespace

double pairwise_sum(std::span<const double> v) {
    return pairwise(v.data(), v.size());
}

} // namespace steiner
