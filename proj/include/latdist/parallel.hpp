#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace latdist {

/// Splits [0, count) into at most `threads` contiguous chunks and calls
/// fn(begin, end, worker) for each. Chunk boundaries depend only on count and
/// the effective worker count, so callers that merge per-worker results by
/// addition get identical output for any thread cap.
template <class Fn>
void for_each_chunk(std::size_t count, unsigned threads, Fn&& fn)
{
    unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        fn(std::size_t(0), count, 0u);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t begin = count * w / workers;
        std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace latdist
