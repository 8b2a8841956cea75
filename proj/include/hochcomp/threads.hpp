#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hochcomp {

/** Worker cap: HOCHCOMP_THREADS when set to a positive integer, else the
 *  hardware concurrency (at least 1).  Malformed values are ignored. */
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("HOCHCOMP_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && end && *end == '\0' && v >= 1)
            hw = static_cast<unsigned>(std::min(v, 256L));
    }
    return hw;
}

/**
 * Run fn(0), ..., fn(n-1) across worker threads via a shared index counter.
 * Results must go into disjoint slots owned by each index.  The first
 * exception thrown is rethrown on the calling thread after all workers join.
 */
template <class Fn>
inline void parallel_for(int n, Fn&& fn) {
    if (n <= 0) return;
    unsigned workers = std::min(worker_count(), static_cast<unsigned>(n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace hochcomp
