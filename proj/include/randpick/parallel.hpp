#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace randpick {

// Runs fn(i) for i in [begin, end) across `workers` threads. Items must be
// independent (each i writes only its own slots); under that contract the
// result is identical for any worker count. Static contiguous partition.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, int workers, Fn&& fn) {
    std::size_t count = end > begin ? end - begin : 0;
    if (count == 0) return;
    std::size_t w = workers < 1 ? 1 : std::size_t(workers);
    if (w > count) w = count;
    if (w == 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        std::size_t lo = begin + count * t / w;
        std::size_t hi = begin + count * (t + 1) / w;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace randpick
