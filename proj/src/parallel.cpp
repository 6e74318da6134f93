#include "harmjet/parallel.hpp"

#include <exception>

namespace harmjet::par {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void for_index(int n, const std::function<void(int)>& fn, bool parallel) {
    std::exception_ptr first;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace harmjet::par
