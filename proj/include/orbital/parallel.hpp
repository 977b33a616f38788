#pragma once

#include <cstddef>
#include <functional>

namespace orbital::parallel {

// Worker count used by every parallel loop in the library. 0 selects
// std::thread::hardware_concurrency(). Results never depend on this value:
// work is split into fixed-size chunks and merged in chunk order.
void set_threads(unsigned n) noexcept;
unsigned threads() noexcept;

inline constexpr std::size_t kDefaultChunk = 4096;

std::size_t chunk_count(std::size_t n, std::size_t chunk = kDefaultChunk) noexcept;

// Calls fn(chunk_index, begin, end) for each chunk of [0, n). Chunks may run
// concurrently; fn must only write to per-chunk state.
void for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                std::size_t chunk = kDefaultChunk);

} // namespace orbital::parallel
