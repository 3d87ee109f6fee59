#pragma once

#include <cstddef>
#include <exception>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forge {

inline int default_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
#endif
}

// Runs fn(i) for every i in [0, n). jobs <= 1 takes the serial reference
// path; the OpenMP path requires fn to write only to index-addressed slots,
// which keeps both paths bit-identical. Tests and the bench tool compare them.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
#ifdef _OPENMP
  if (jobs > 1 && n > 1) {
    std::exception_ptr first_error;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(forge_parallel_for_error)
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#else
  (void)jobs;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace forge
