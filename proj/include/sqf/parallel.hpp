#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqf {

// requested > 0 wins, then SQFREE_THREADS, then hardware
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SQFREE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// f(begin, end, worker) over contiguous chunks of [0, n)
template <class F>
void parallel_chunks(std::size_t n, int threads, F&& f) {
    int t = std::max(1, std::min<int>(resolve_threads(threads), int(std::max<std::size_t>(n, 1))));
    if (t == 1) {
        f(std::size_t(0), n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex mu;
    std::size_t step = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        std::size_t b = std::min(n, w * step), e = std::min(n, b + step);
        pool.emplace_back([&, b, e, w] {
            try {
                f(b, e, w);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace sqf
