#ifndef CYCLEWALK_REPLICATE_H_
#define CYCLEWALK_REPLICATE_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "cyclewalk/rng.h"

namespace cyclewalk {

// 0 means "all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(rep, rng) for rep in [0, reps) and returns the results in replicate
// order. Each replicate gets its own stream derived from `seed`, so the output
// is identical for any thread count.
template <typename Fn>
auto replicate(std::size_t reps, std::uint64_t seed, unsigned threads, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}, std::declval<Rng&>()))> {
  using Result = decltype(fn(std::size_t{}, std::declval<Rng&>()));
  std::vector<Result> out(reps);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), reps));
  if (workers <= 1) {
    for (std::size_t r = 0; r < reps; ++r) {
      Rng rng = make_stream(seed, r);
      out[r] = fn(r, rng);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        Rng rng = make_stream(seed, r);
        out[r] = fn(r, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(reps);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace cyclewalk

#endif  // CYCLEWALK_REPLICATE_H_
