#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace vc {

// body(i) for i < n over at most `threads` workers, strided so results are
// written to fixed slots regardless of scheduling
template <class F>
void parallel_for(int n, int threads, F&& body) {
    threads = std::clamp(threads, 1, std::max(1, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += threads) body(i);
        });
    for (auto& th : pool) th.join();
}

// VC_THREADS, or 1
int default_threads();

}  // namespace vc
