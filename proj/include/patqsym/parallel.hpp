#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace patqsym {

// Runs fn(block) for every block in [0, n_blocks). Blocks are claimed in
// order by a pool of `threads` workers; callers keep per-block state and
// merge in block order, which keeps results deterministic. The first
// exception thrown by any block is rethrown after all workers stop.
inline void parallel_blocks(std::uint64_t n_blocks, unsigned threads,
                            const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || n_blocks <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            if (abort.load(std::memory_order_relaxed)) return;
            std::uint64_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                abort.store(true);
                return;
            }
        }
    };

    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, n_blocks));
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace patqsym
