#ifndef NEB_PARALLEL_HPP
#define NEB_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace neb {

/// Runs body(i) for i in [0, count) on up to `jobs` threads. Work is split
/// into contiguous blocks; callers write results into per-index slots so
/// the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t block = (count + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * block);
        for (std::size_t i = w * block; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace neb

#endif  // NEB_PARALLEL_HPP
