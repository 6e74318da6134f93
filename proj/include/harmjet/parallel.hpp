#pragma once

#include <functional>

namespace harmjet::par {

bool openmp_enabled();

// Runs fn(0), ..., fn(n-1); in parallel when requested and OpenMP is
// compiled in. The first exception thrown by any iteration is rethrown
// after the loop drains.
void for_index(int n, const std::function<void(int)>& fn, bool parallel = true);

}  // namespace harmjet::par
