// Minimal worker pool: runs fn(0..n-1) on up to `jobs` threads, rethrowing the first exception.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qg {

template <class Fn>
void parallel_for(size_t n, int jobs, Fn&& fn) {
    const size_t workers = std::min(n, static_cast<size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto run = [&] {
        for (size_t k; (k = next++) < n;) {
            try {
                fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace qg
