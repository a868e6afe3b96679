#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace solidspin {

/// Worker cap: hardware concurrency, reduced by SOLID_WIGNER_THREADS when set.
inline int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SOLID_WIGNER_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1 && cap < hw) hw = cap;
        } catch (...) {
        }
    }
    return hw;
}

/// Run f(i) for i in [0, count) across threads in contiguous chunks. Results
/// must be written to per-index slots; the partition never affects values.
template <class F>
void parallel_for(std::size_t count, F&& f) {
    const int nt = max_threads();
    if (nt <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nt), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f]() {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace solidspin
