#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlab::core {

/// Execution mode for the data-parallel kernels. `serial` is the reference
/// implementation kept for testing; `parallel` runs the same loop body under
/// OpenMP. Each index writes only its own slot, so the two modes produce
/// bit-identical results and output never depends on the worker count.
enum class Exec { serial, parallel };

template <typename Fn>
void parallel_for(Exec exec, std::size_t n, Fn&& fn) {
#ifdef _OPENMP
    if (exec == Exec::parallel) {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            fn(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        fn(i);
    }
}

template <typename T, typename Fn>
std::vector<T> parallel_map(Exec exec, std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    parallel_for(exec, n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

inline int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace qlab::core
