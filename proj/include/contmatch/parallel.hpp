#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace contmatch {

// Caps worker threads for subsequent parallel_for calls (0 = runtime default).
inline void set_thread_limit(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

// Static-schedule loop over [0, n). Bodies must write only to slot i so that
// results do not depend on the thread count. If bodies throw, the exception
// from the smallest index is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const auto count = static_cast<long long>(n);
  std::exception_ptr first_error;
  long long first_index = std::numeric_limits<long long>::max();
  std::mutex guard;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (i < first_index) {
        first_index = i;
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace contmatch
