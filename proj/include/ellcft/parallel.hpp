#ifndef ELLCFT_PARALLEL_HPP
#define ELLCFT_PARALLEL_HPP

#include <cstddef>

namespace ellcft {

// serial is the reference path; parallel uses OpenMP and must agree with it
enum class Exec { serial, parallel };

template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::parallel) {
        const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < nn; ++i) f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) f(i);
    }
}

}  // namespace ellcft

#endif
