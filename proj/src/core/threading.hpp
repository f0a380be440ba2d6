// Copyright 2026 The lgimap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace lgimap {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over contiguous row blocks. Output must be written to
// disjoint rows so results are identical for every thread count.
template <typename Fn>
void parallel_rows(int rows, int threads, Fn&& fn) {
    const int t = std::min(resolve_threads(threads), std::max(rows, 1));
    if (t <= 1 || rows <= 1) {
        fn(0, rows);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    const int chunk = (rows + t - 1) / t;
    for (int i = 0; i < t; ++i) {
        const int begin = i * chunk;
        const int end = std::min(rows, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, i, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace lgimap
