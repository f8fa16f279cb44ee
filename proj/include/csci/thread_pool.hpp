#pragma once

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace csci {

// Worker count: CSCI_THREADS when set to a positive integer, otherwise the
// hardware concurrency. Thread count never affects numeric output; work is
// partitioned by index and every result lands in a caller-owned slot.
inline int resolve_threads() {
    if (const char* env = std::getenv("CSCI_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 4096) return int(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Runs fn(lo, hi) over a static partition of [0, total) on `threads` threads.
// Rethrows the first worker exception after all threads join.
template <typename Fn>
void parallel_for(long total, int threads, Fn&& fn) {
    if (total <= 0) return;
    if (threads > total) threads = int(total);
    if (threads <= 1) {
        fn(0L, total);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const long base = total / threads;
    const long extra = total % threads;
    long lo = 0;
    for (int w = 0; w < threads; ++w) {
        const long hi = lo + base + (w < extra ? 1 : 0);
        pool.emplace_back([&fn, &errors, w, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                errors[std::size_t(w)] = std::current_exception();
            }
        });
        lo = hi;
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace csci
