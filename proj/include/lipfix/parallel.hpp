#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace lipfix {

/// Worker count from LIPFIX_THREADS (integer >= 1); 1 when unset or invalid.
std::size_t thread_count();

/// Runs `body(begin, end)` over contiguous chunks of [0, n). Chunks are
/// disjoint and the first exception thrown (lowest chunk) is rethrown after
/// all workers join. Callers combine per-chunk results in chunk order so the
/// output does not depend on the worker count.
void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& body);

inline std::size_t chunk_count(std::size_t n) {
    const std::size_t t = thread_count();
    return n == 0 ? 1 : (t < n ? t : n);
}

}  // namespace lipfix
