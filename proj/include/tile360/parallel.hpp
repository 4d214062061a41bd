#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace t360 {

// Worker count: P360_THREADS caps parallelism, 0 or unset means auto.
inline unsigned thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("P360_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
    }
    return n;
}

// Runs fn(i) for i in [0, count) over contiguous index chunks. Callers must
// write only to disjoint, index-owned outputs, which keeps results
// bit-identical for any thread count.
template <typename Fn>
void parallel_for(size_t count, Fn&& fn) {
    const unsigned threads = thread_budget();
    if (threads <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const size_t workers = std::min<size_t>(threads, count);
    const size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        const size_t begin = w * chunk;
        const size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace t360
