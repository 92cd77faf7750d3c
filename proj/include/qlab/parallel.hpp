#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlab {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_max_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n > 0 ? n : 1);
#else
  (void)n;
#endif
}

// Static schedule over [0, n). Bodies must write only to their own slot so
// the result is independent of thread count.
template <class Body>
void parallel_for(std::int64_t n, Body&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) body(i);
#else
  for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace qlab
