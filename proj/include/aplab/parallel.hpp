#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace aplab {

// Global worker cap for the deterministic parallel helpers below.
// 0 means "use hardware_concurrency".
void set_max_threads(int n);
int effective_threads();

// Deterministic chunked map-reduce over [0, n).
//
// The index range is split into fixed-size chunks whose boundaries do not
// depend on the thread count.  Each chunk produces one partial result of
// type R; partials are combined strictly in chunk order.  Floating-point
// reductions are therefore bit-identical for any number of workers.
template <class R, class ChunkFn, class CombineFn>
R parallel_chunked(std::size_t n, std::size_t chunk_size, ChunkFn chunk_fn,
                   CombineFn combine, R init) {
  if (n == 0) return init;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<R> partials(n_chunks);

  const int workers_wanted = effective_threads();
  if (workers_wanted <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      const std::size_t lo = c * chunk_size;
      const std::size_t hi = std::min(n, lo + chunk_size);
      partials[c] = chunk_fn(lo, hi);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        const std::size_t lo = c * chunk_size;
        const std::size_t hi = std::min(n, lo + chunk_size);
        partials[c] = chunk_fn(lo, hi);
      }
    };
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(workers_wanted), n_chunks);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  R acc = init;
  for (std::size_t c = 0; c < n_chunks; ++c) acc = combine(acc, partials[c]);
  return acc;
}

// Parallel for over [0, n) where the body writes only to disjoint state
// (e.g. disjoint array slices).  Chunk boundaries are thread-count
// independent, so any race-free body yields deterministic output.
template <class BodyFn>
void parallel_for_chunks(std::size_t n, std::size_t chunk_size, BodyFn body) {
  struct Unit {};
  parallel_chunked<Unit>(
      n, chunk_size,
      [&](std::size_t lo, std::size_t hi) {
        body(lo, hi);
        return Unit{};
      },
      [](Unit, Unit) { return Unit{}; }, Unit{});
}

} // namespace aplab
