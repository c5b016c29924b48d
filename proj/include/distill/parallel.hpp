#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace distill {

// Thread budget for restart/sample pools. DISTILL_THREADS caps it; a value
// of 1 forces the serial path.
inline int thread_budget() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("DISTILL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

// Runs f(i) for i in [0, n). Results must be written to per-index slots so
// the output is identical whether the loop runs serially or in parallel.
template <class F>
void parallel_for(std::int64_t n, F&& f, bool force_serial = false) {
    int threads = force_serial ? 1 : thread_budget();
    if (threads <= 1) {
        for (std::int64_t i = 0; i < n; ++i) f(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) f(i);
#else
    for (std::int64_t i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace distill
