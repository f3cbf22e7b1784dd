#pragma once

// Deterministic task fan-out: results land in input order no matter how many
// workers run, so batch output is byte-identical across thread counts.

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace datefmt {

template <typename Result>
std::vector<Result> parallel_map_ordered(
    size_t count, unsigned jobs, const std::function<Result(size_t)>& fn) {
  std::vector<Result> results(count);
  if (count == 0) return results;
  if (jobs <= 1) {
    for (size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      results[i] = fn(i);
    }
  };
  unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  std::vector<std::thread> threads;
  threads.reserve(n);
  for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace datefmt
