#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace snum {

// Worker cap: SNUM_THREADS if set and positive, else the hardware concurrency.
std::size_t thread_budget();

// Calls body(begin, end, chunk) on contiguous chunks of [0, n). Chunk
// boundaries depend on the thread budget, so callers reduce with
// order-independent operations. The first exception is rethrown.
template <class Body>
void parallel_chunks(std::size_t n, Body&& body)
{
    const std::size_t workers = std::min(thread_budget(), std::max<std::size_t>(n, 1));
    if (workers <= 1 || n < 2) {
        body(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t step = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * step;
        const std::size_t end = std::min(n, begin + step);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace snum
