#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qfn {

/// Worker cap: QFI_NOISE_WORKERS env var, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("QFI_NOISE_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, n). Items must be independent; results
/// should be written to per-index slots so the outcome does not depend
/// on the worker count.
template <class Fn>
inline void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

/// Pairwise (tree) summation over a sequence of addable values.
/// Deterministic order regardless of how the values were produced.
template <class T>
inline T pairwise_sum(std::vector<T> xs) {
    if (xs.empty()) return T{};
    while (xs.size() > 1) {
        std::size_t half = (xs.size() + 1) / 2;
        for (std::size_t i = 0; i + half < xs.size(); ++i) xs[i] += xs[i + half];
        xs.resize(half);
    }
    return xs[0];
}

}  // namespace qfn
