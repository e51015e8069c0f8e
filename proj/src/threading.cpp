#include "spin_relax/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace spinrelax {

int resolve_threads(int requested) {
    if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SPIN_RELAX_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nt = std::max(1, std::min<int>(resolve_threads(threads),
                                             static_cast<int>(std::max<std::size_t>(n, 1))));
    if (nt == 1 || n == 0) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    const std::size_t chunk = (n + static_cast<std::size_t>(nt) - 1) / static_cast<std::size_t>(nt);
    for (int w = 0; w < nt; ++w) {
        const std::size_t b = std::min(n, static_cast<std::size_t>(w) * chunk);
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    for (auto& th : pool) th.join();
}

}  // namespace spinrelax
