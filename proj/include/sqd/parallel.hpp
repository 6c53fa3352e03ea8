#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sqd {

/**
 * Calls body(k) for k in [0, n), splitting the range into `workers`
 * contiguous chunks. Each index is handled by exactly one thread, so results
 * written by index do not depend on the worker count. The exception from the
 * lowest-numbered failing chunk is rethrown.
 */
template <class Body> void parallel_for(std::size_t n, unsigned workers, Body &&body) {
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
    std::vector<std::exception_ptr> errors(chunks);
    auto run_chunk = [&](std::size_t w) {
        try {
            for (std::size_t k = n * w / chunks; k < n * (w + 1) / chunks; ++k) {
                body(k);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (chunks == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(chunks);
        for (std::size_t w = 0; w < chunks; ++w) {
            threads.emplace_back(run_chunk, w);
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace sqd
