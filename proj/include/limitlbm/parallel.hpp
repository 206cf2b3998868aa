#ifndef LIMITLBM_PARALLEL_HPP_
#define LIMITLBM_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace limitlbm {

// Splits [0, count) into `workers` contiguous chunks and runs body(begin, end)
// on each. Chunks are disjoint, so results never depend on the worker count
// as long as body writes only inside its own range.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body &&body) {
  const std::size_t chunks =
      std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1,
                              std::max<std::size_t>(count, 1));
  if (chunks == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(chunks - 1);
  const std::size_t base = count / chunks, extra = count % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t end = begin + base + (c < extra ? 1 : 0);
    if (c + 1 == chunks) {
      body(begin, end);
    } else {
      pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    begin = end;
  }
}

}  // namespace limitlbm

#endif  // LIMITLBM_PARALLEL_HPP_
