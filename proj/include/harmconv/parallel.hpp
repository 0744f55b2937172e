#pragma once

#include <cstddef>
#include <functional>

namespace harmconv {

// Worker count: HARMCONV_THREADS when set to a positive integer, otherwise all cores.
std::size_t thread_count();

// Calls body(i) for i in [0, count), spread over thread_count() workers. Each index is
// visited exactly once; callers write results into pre-sized slots and reduce afterwards,
// so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace harmconv
