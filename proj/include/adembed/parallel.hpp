#pragma once

#include <cstddef>
#include <functional>

namespace adembed {

// Worker count: an explicit override if set, else ADEMBED_THREADS, else the
// hardware concurrency.
std::size_t thread_count();

// 0 clears the override.
void set_thread_count(std::size_t threads);

// Runs fn(begin, end) over contiguous chunks of [0, count). Callers write
// results by index so the outcome never depends on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace adembed
