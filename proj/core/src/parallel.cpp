#include "jetlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jetlab {

unsigned workerCount() {
  if (const char* env = std::getenv("JETLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

std::size_t chunkCount(std::size_t n) {
  constexpr std::size_t kMinChunk = 4096;
  if (n == 0) return 0;
  std::size_t byWork = (n + kMinChunk - 1) / kMinChunk;
  return std::max<std::size_t>(1, std::min<std::size_t>(workerCount(), byWork));
}

void parallelChunks(std::size_t n,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = chunkCount(n);
  if (chunks == 0) return;
  if (chunks == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  std::exception_ptr failure;
  std::mutex failureLock;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = n * c / chunks;
    std::size_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failureLock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace jetlab
