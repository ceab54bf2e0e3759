#include "lipfix/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lipfix {

std::size_t thread_count() {
    const char* env = std::getenv("LIPFIX_THREADS");
    if (env == nullptr) return 1;
    try {
        const long v = std::stol(env);
        return v >= 1 ? static_cast<std::size_t>(v) : 1;
    } catch (...) {
        return 1;
    }
}

void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (chunks <= 1 || n < 2) {
        body(0, 0, n);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = n * c / chunks;
        const std::size_t end = n * (c + 1) / chunks;
        workers.emplace_back([&, c, begin, end] {
            try {
                body(c, begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace lipfix
