#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "epsnet/geometry.hpp"

namespace epsnet {

using Rng = std::mt19937_64;

/// Independent generator for substream `stream` of `seed`.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

/// `count` points drawn uniformly from the box.
inline PointCloud uniform_points(const AxisBox& box, std::size_t count, Rng& rng) {
  const std::size_t d = box.lo.dim();
  PointCloud out(d);
  out.reserve(count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(d);
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t i = 0; i < d; ++i) p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit(rng);
    out.push_back(p);
  }
  return out;
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers (0 = all cores).
/// Callers write per-chunk results and reduce in chunk order, so the outcome does not
/// depend on the worker count.
template <class Body>
void parallel_chunks(std::size_t chunks, unsigned threads, Body&& body) {
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(chunks, 1)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          body(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace epsnet
