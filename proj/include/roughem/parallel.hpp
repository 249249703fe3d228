#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace roughem {

// Pairwise (binary tree) summation over [first, last). Deterministic for a
// fixed element order and numerically stabler than a running sum.
inline double pairwise_sum(const double* first, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += first[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(first, half) + pairwise_sum(first + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v.data(), v.size());
}

// Runs body(i) for i in [0, n) on `threads` workers. Work is handed out in
// fixed blocks through an atomic cursor; each index is processed exactly once
// and writes only to its own slot, so results do not depend on the thread
// count. threads == 0 means hardware concurrency.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body,
                         std::size_t block = 16) {
    unsigned nt = threads > 0 ? static_cast<unsigned>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
    if (nt <= 1 || n <= block) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = cursor.fetch_add(block);
            if (b >= n) return;
            const std::size_t e = std::min(n, b + block);
            try {
                for (std::size_t i = b; i < e; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace roughem
