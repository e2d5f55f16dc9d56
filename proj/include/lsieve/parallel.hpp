#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lsieve {

// Worker cap from LAURENT_SIEVE_THREADS; defaults to 1 so reports are produced
// single-threaded unless the user opts in.
inline int worker_count() {
    static int cached = [] {
        const char* env = std::getenv("LAURENT_SIEVE_THREADS");
        if (!env) return 1;
        long v = std::strtol(env, nullptr, 10);
        if (v < 1) return 1;
        unsigned hw = std::thread::hardware_concurrency();
        long cap = hw ? (long)hw : 64;
        if (v > cap) v = cap;
        if (v > 64) v = 64;
        return (int)v;
    }();
    return cached;
}

// Splits [0, n) into per-worker chunks; fn(worker, begin, end) must only write
// worker-local state so results are independent of the thread count.
template <class Fn>
void parallel_chunks(std::uint64_t n, Fn&& fn) {
    int workers = worker_count();
    if (workers <= 1 || n < 4096) {
        fn(0, (std::uint64_t)0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t b = (std::uint64_t)w * chunk;
        std::uint64_t e = b + chunk < n ? b + chunk : n;
        if (b >= e) break;
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace lsieve
