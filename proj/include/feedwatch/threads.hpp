#pragma once

#include <cstddef>

namespace feedwatch {

// Internal parallelism is capped by the FEEDWATCH_THREADS environment variable
// (0 or unset = use all OpenMP threads). Tests override the cap to compare
// parallel results against the serial reference.

/// Current cap (0 = auto).
int thread_cap();

/// Override the cap programmatically; takes precedence over the environment.
void set_thread_cap(int cap);

/// Number of threads to use for a loop of `items` independent tasks.
int resolve_threads(std::size_t items);

}  // namespace feedwatch
