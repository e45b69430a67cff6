#pragma once

// Chunked parallel scans over an index range. Results come back in chunk
// order, so a scan's output never depends on the thread count.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace factlab {

inline constexpr std::uint64_t kDefaultScanCap = 10'000'000;

struct ScanOptions {
  unsigned threads = 1;
  std::uint64_t cap = kDefaultScanCap;
};

/// Splits [0, total) into contiguous chunks, runs fn(begin, end) on each and
/// returns the per-chunk results in order. The first exception thrown by any
/// chunk is rethrown after all workers finish.
template <class Fn>
auto parallel_chunks(std::uint64_t total, unsigned threads, Fn&& fn) {
  using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  const unsigned workers = std::max(1u, threads);
  const std::uint64_t nchunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, workers));
  std::vector<Result> results(nchunks);
  auto bounds = [&](std::uint64_t c) { return total / nchunks * c + std::min(c, total % nchunks); };
  if (nchunks == 1) {
    results[0] = fn(std::uint64_t{0}, total);
    return results;
  }
  std::vector<std::exception_ptr> errors(nchunks);
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    pool.emplace_back([&, c] {
      try {
        results[c] = fn(bounds(c), bounds(c + 1));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace factlab
