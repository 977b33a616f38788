#include "orbital/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orbital::parallel {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_threads(unsigned n) noexcept { g_threads.store(n); }

unsigned threads() noexcept {
    unsigned n = g_threads.load();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

std::size_t chunk_count(std::size_t n, std::size_t chunk) noexcept {
    return chunk == 0 ? 0 : (n + chunk - 1) / chunk;
}

void for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                std::size_t chunk) {
    const std::size_t chunks = chunk_count(n, chunk);
    if (chunks == 0) return;
    const std::size_t workers = std::min<std::size_t>(threads(), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                fn(c, c * chunk, std::min(n, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace orbital::parallel
