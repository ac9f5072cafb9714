#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace lsbm {

/// Runs fn(i) for i in [0, n) over n_threads workers on static index
/// chunks.  Caller-side storage must be index-addressed so the result is
/// identical for any thread count.
inline void parallel_for(std::int64_t n, int n_threads,
                         const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    n_threads = std::max(1, n_threads);
    if (n_threads == 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::int64_t chunk = (n + n_threads - 1) / n_threads;
    std::vector<std::thread> workers;
    for (int t = 0; t < n_threads; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace lsbm
