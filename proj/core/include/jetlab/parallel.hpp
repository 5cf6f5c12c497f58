#pragma once

#include <cstddef>
#include <functional>

namespace jetlab {

// Worker count: JETLAB_THREADS if set and positive, else hardware concurrency.
unsigned workerCount();

// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
// Chunks are assigned deterministically; body must not share mutable state
// across chunks except through per-chunk slots it owns.
void parallelChunks(std::size_t n,
                    const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& body);

// Number of chunks parallelChunks will use for a range of n elements.
std::size_t chunkCount(std::size_t n);

}  // namespace jetlab
