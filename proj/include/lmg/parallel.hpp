#pragma once

#include <cstddef>
#include <functional>

namespace lmg {

// Runs fn(i) for i in [0, count) on at most `jobs` threads (serial for
// jobs <= 1). Items must be independent; callers write results by index, so
// output is identical for any jobs value. The first exception thrown by a
// worker is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace lmg
