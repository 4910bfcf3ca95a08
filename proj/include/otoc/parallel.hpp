#pragma once

#include <cstddef>
#include <functional>

namespace otoc {

// Runs fn(0) ... fn(count-1) on up to `workers` threads, thread k taking the
// indices congruent to k. Each index must write only its own output slot;
// with that discipline results are identical for any worker count. Exceptions
// from workers are captured and the first one rethrown after the join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace otoc
