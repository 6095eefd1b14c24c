#ifndef OSLT_PARALLEL_HPP
#define OSLT_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace oslt {

inline int hardware_threads() {
    if (const char* env = std::getenv("OSLT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned n = std::thread::hardware_concurrency();
    return n ? static_cast<int>(n) : 1;
}

/// Runs fn(i) for i in [0, n). Used only for node-sliced work where every
/// index writes its own slot, so results are identical for any thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const int nthreads = hardware_threads();
    if (nthreads <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, n / (8 * nthreads));
    auto worker = [&]() {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            const std::size_t end = std::min(n, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (int t = 0; t < nthreads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace oslt

#endif
