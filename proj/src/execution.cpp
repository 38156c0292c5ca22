#include "inellipse/execution.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace inellipse {

int parallel_thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace inellipse
