#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace padicl {

/// Splits [begin, end) into `workers` contiguous chunks and runs
/// body(chunk, lo, hi) for each, one thread per chunk. Chunk boundaries
/// depend only on the range and the worker count. The first exception
/// thrown by any chunk is rethrown on the calling thread.
template <typename Body>
void for_each_chunk(std::uint64_t begin, std::uint64_t end, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  const std::uint64_t total = end > begin ? end - begin : 0;
  if (workers == 1 || total < 2 * workers) {
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = begin + total * w / workers;
      const std::uint64_t hi = begin + total * (w + 1) / workers;
      body(w, lo, hi);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = begin + total * w / workers;
    const std::uint64_t hi = begin + total * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      try {
        body(w, lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace padicl
