// SPDX-License-Identifier: Apache-2.0
//
// Deterministic parallel Monte Carlo.
//
// Draws are split into fixed-size blocks; block b always uses
// root.substream(b) and writes its own slice of the output. Block boundaries
// do not depend on the thread count, so results are bit-identical for any
// number of threads.

#ifndef RLR_PARALLEL_HPP
#define RLR_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "rlr/error.hpp"
#include "rlr/random.hpp"

namespace rlr {

inline constexpr std::size_t kDrawBlockSize = 1024;

/// n draws of `draw(RngStream&) -> double`, in block order.
template <class Draw>
std::vector<double> parallel_draws(const RngStream& root, std::size_t n, int threads, Draw&& draw) {
  if (threads < 1) throw ParameterError("parallel_draws: threads must be >= 1");
  std::vector<double> out(n);
  const std::size_t blocks = (n + kDrawBlockSize - 1) / kDrawBlockSize;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        RngStream rng = root.substream(b);
        const std::size_t lo = b * kDrawBlockSize;
        const std::size_t hi = std::min(n, lo + kDrawBlockSize);
        for (std::size_t i = lo; i < hi; ++i) out[i] = draw(rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };

  const auto n_workers = static_cast<std::size_t>(threads) < blocks ? static_cast<std::size_t>(threads) : blocks;
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rlr

#endif  // RLR_PARALLEL_HPP
