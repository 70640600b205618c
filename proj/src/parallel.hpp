// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_SRC_PARALLEL_HPP
#define ISOGRAPH_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace isograph::detail {

/// Splits [0, n) into contiguous chunks and runs fn(chunk, begin, end) on up to `threads` threads.
/// Returns the number of chunks. Exceptions are rethrown on the calling thread.
template <class Fn>
int parallel_chunks(std::int64_t n, int threads, Fn&& fn)
{
    int t = std::max(1, threads);
    if (n < 4096) t = 1;
    t = int(std::min<std::int64_t>(t, std::max<std::int64_t>(1, n)));
    if (t == 1) {
        fn(0, std::int64_t(0), n);
        return 1;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        std::int64_t b = n * i / t;
        std::int64_t e = n * (i + 1) / t;
        pool.emplace_back([&, i, b, e] {
            try {
                fn(i, b, e);
            } catch (...) {
                errors[std::size_t(i)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return t;
}

inline int chunk_count(std::int64_t n, int threads)
{
    int t = std::max(1, threads);
    if (n < 4096) t = 1;
    return int(std::min<std::int64_t>(t, std::max<std::int64_t>(1, n)));
}

} // namespace isograph::detail

#endif
