#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace burnsolver {

// Runs fn(begin, end) over contiguous chunks of [0, count) using `threads`
// workers. With threads <= 1 the call happens inline on the current thread.
// Chunk boundaries never overlap, so workers may write to disjoint slices of
// shared output without synchronization.
template <typename Fn>
void parallel_for_chunks(std::size_t count, int threads, Fn&& fn) {
    if (count == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(count, threads > 1 ? static_cast<std::size_t>(threads) : 1);
    if (workers <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace burnsolver
