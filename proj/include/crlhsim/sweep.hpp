#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "crlhsim/types.hpp"

namespace crlhsim::sweep {

/// Evaluates fn over the grid on a worker pool sized by available
/// parallelism. Results come back in grid order; the first worker exception
/// is rethrown on the caller.
template <typename T>
std::vector<T> parallel_map(const std::vector<double>& grid,
                            const std::function<T(double)>& fn) {
    const size_t n = grid.size();
    std::vector<T> out(n);
    if (n == 0) return out;

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));

    if (workers == 1) {
        for (size_t i = 0; i < n; ++i) out[i] = fn(grid[i]);
        return out;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (size_t i = w; i < n; i += workers) out[i] = fn(grid[i]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace crlhsim::sweep
