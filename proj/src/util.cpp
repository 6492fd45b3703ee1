#include "wbench/util.hpp"

#include <atomic>

namespace wbench {

namespace {
std::atomic<int> g_threads{1};
}

int threads() { return g_threads.load(); }

void set_threads(int n) {
    if (n == 0) n = int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    g_threads.store(n);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body_range) {
    int t = threads();
    if (t <= 1 || n < 2) {
        if (n > 0) body_range(0, n);
        return;
    }
    std::size_t workers = std::min<std::size_t>(std::size_t(t), n);
    std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body_range, lo, hi] { body_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace wbench
