#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fluidact {

/// Evaluates fn(i) for i in [0, n) on up to `workers` threads and returns the
/// results in index order. Each result depends only on its index, so the
/// output is identical for any worker count. The first exception thrown by
/// any task is rethrown on the calling thread.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t n, std::size_t workers, Fn&& fn) {
    std::vector<Result> out(n);
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                // Strided assignment keeps the partition independent of timing.
                for (std::size_t i = w; i < n; i += workers) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace fluidact
