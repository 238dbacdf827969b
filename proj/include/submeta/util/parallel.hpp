#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace submeta {

/// Worker count: SUBMETA_THREADS if set, hardware concurrency otherwise.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("SUBMETA_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0, count) on a fixed pool. Work is striped by
/// index so output written to slot i never races; results stay in
/// deterministic order regardless of scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 0) {
    if (threads == 0) threads = default_thread_count();
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace submeta
