#pragma once

// Bounded worker pool for independent sweep points. Results come back in
// declared order; a failing point records its error instead of aborting the sweep.

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

namespace fracshear {

template <class T>
struct PointResult {
  std::optional<T> value;
  std::string error;
  bool ok() const { return value.has_value(); }
};

template <class T, class F>
std::vector<PointResult<T>> parallel_map(std::size_t count, int workers, F&& fn) {
  std::vector<PointResult<T>> out(count);
  const int saved_levels = omp_get_max_active_levels();
  // one level of parallelism: inner kernels run serially inside a worker
  if (workers > 1) omp_set_max_active_levels(1);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for num_threads(workers > 0 ? workers : 1) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)].value = fn(static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      out[static_cast<std::size_t>(i)].error = e.what();
    }
  }
  omp_set_max_active_levels(saved_levels);
  return out;
}

}  // namespace fracshear
