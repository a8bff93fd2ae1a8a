#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "linkint/vec.hpp"

namespace linkint {

// Worker count: LINKINT_THREADS env var if set, else hardware concurrency.
int worker_count();
void set_worker_count(int n);  // 0 restores the default

// Deterministic parallel reduction: the index range is cut into fixed blocks,
// each block is summed sequentially with compensated accumulation, and the
// per-block results are combined in block order.  Values are therefore
// bit-identical for any worker count.
template <class T, class F>
T parallel_sum(std::size_t n, F&& f) {
    constexpr std::size_t kBlock = 1024;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<T> partial(nblocks, T{});

    auto run_block = [&](std::size_t b) {
        Kahan<T> acc;
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        for (std::size_t i = lo; i < hi; ++i) acc.add(f(i));
        partial[b] = acc.value();
    };

    const int workers = worker_count();
    if (workers <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                run_block(b);
            }
        };
        std::vector<std::thread> pool;
        const int k = std::min<std::size_t>(workers, nblocks);
        pool.reserve(k);
        for (int t = 0; t < k; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Kahan<T> total;
    for (const T& p : partial) total.add(p);
    return total.value();
}

}  // namespace linkint
