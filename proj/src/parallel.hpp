#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace dsg::detail {

inline std::size_t worker_count(std::size_t tasks) {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(hw, tasks));
}

/// Runs body(worker, begin, end) over contiguous slices of [0, tasks).
template <typename Body>
void parallel_slices(std::size_t tasks, std::size_t workers, Body&& body) {
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, tasks);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = tasks * w / workers;
    std::size_t end = tasks * (w + 1) / workers;
    threads.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
}

}  // namespace dsg::detail
