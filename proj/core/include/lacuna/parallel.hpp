#pragma once

#include <cstddef>
#include <functional>

namespace lacuna {

// Worker cap: LACUNA_THREADS if set and positive, else hardware concurrency.
std::size_t thread_cap();
// Overrides the environment for the rest of the process; 0 restores it.
void set_thread_cap(std::size_t cap);

// Runs body(i) for i in [0, count). Each index is handled exactly once;
// callers write results by index so the outcome never depends on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lacuna
