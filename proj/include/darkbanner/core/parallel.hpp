#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace darkbanner::core {

// Parallel kernels follow one discipline: every loop body writes only to its
// own index slot, and any floating-point reduction happens afterwards in
// serial index order. Outputs are therefore bit-identical at any thread count,
// and the serial path is the reference the tests compare against.

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// Serial driver with the same shape as parallel_for; the benchmark and the
// determinism tests run kernels through both.
template <typename Fn>
void serial_for(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        fn(static_cast<std::size_t>(i));
    }
#else
    serial_for(n, fn);
#endif
}

}  // namespace darkbanner::core
