#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace picone {

// Worker count: PICONE_THREADS wins, otherwise hardware concurrency.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("PICONE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs chunk(c) for c in [0, n_chunks) on a small pool and returns all chunk
// results in chunk order. The chunk decomposition is fixed by the caller, not
// by the thread count, so any order-sensitive combination done afterwards
// (running sums, argmin scans) is deterministic no matter how many workers ran.
template <typename R>
std::vector<R> parallel_chunks(std::size_t n_chunks, const std::function<R(std::size_t)>& chunk) {
    std::vector<R> results(n_chunks);
    unsigned workers = std::min<std::size_t>(default_thread_count(), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) results[c] = chunk(c);
        return results;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> counter{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t c = counter.fetch_add(1);
                if (c >= n_chunks) break;
                results[c] = chunk(c);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace picone
