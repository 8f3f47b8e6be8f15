#pragma once

#include <cstddef>
#include <functional>

namespace hyplim {

// Worker count: HYPLIM_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

// Calls body(i) for i in [0, n) on up to thread_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hyplim
