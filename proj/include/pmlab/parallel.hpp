#pragma once
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace pmlab {

// Runs fn(block_index, begin, end) over fixed-size blocks of [0, total).
// Block boundaries depend only on total and block_size, never on the worker
// count, so per-block results are identical for any number of threads.
template <class Fn>
void run_blocks(int64_t total, int64_t block_size, int threads, Fn&& fn) {
    if (total <= 0) return;
    int64_t n_blocks = (total + block_size - 1) / block_size;
    if (threads <= 1) {
        for (int64_t b = 0; b < n_blocks; ++b)
            fn(b, b * block_size, std::min(total, (b + 1) * block_size));
        return;
    }
    std::atomic<int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            int64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            fn(b, b * block_size, std::min(total, (b + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

inline int64_t block_count(int64_t total, int64_t block_size) {
    return total <= 0 ? 0 : (total + block_size - 1) / block_size;
}

}
