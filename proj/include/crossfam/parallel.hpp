#pragma once

// Deterministic parallel-for over grid cells: results land in preallocated
// slots indexed by cell, so output order never depends on the thread count.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace crossfam {

inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::min<std::size_t>(threads, count);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace crossfam
