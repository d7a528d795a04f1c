#pragma once

// Deterministic chunked parallelism. The index range is cut into fixed-size
// chunks (independent of the thread count); worker t processes chunks
// t, t+T, t+2T, ...; the caller then combines per-chunk results in chunk
// order. Reductions built this way are bit-identical for any thread count.

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace uvf {

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class Result, class ChunkFn>
std::vector<Result> parallel_chunk_map(std::int64_t total, std::int64_t chunk_size, int threads,
                                       ChunkFn fn) {
  const std::int64_t n_chunks = chunk_size > 0 ? (total + chunk_size - 1) / chunk_size : 0;
  std::vector<Result> results(static_cast<std::size_t>(n_chunks));
  const int t_count = std::min<std::int64_t>(resolve_thread_count(threads), std::max<std::int64_t>(n_chunks, 1));

  auto worker = [&](int tid) {
    for (std::int64_t ci = tid; ci < n_chunks; ci += t_count) {
      std::int64_t begin = ci * chunk_size;
      std::int64_t end = std::min(begin + chunk_size, total);
      results[static_cast<std::size_t>(ci)] = fn(begin, end);
    }
  };

  if (t_count <= 1) {
    worker(0);
    return results;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t_count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t_count));
  for (int t = 0; t < t_count; ++t) {
    pool.emplace_back([&, t] {
      try {
        worker(t);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace uvf
