#include "feedwatch/threads.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace feedwatch {

namespace {

int env_cap() {
    const char* v = std::getenv("FEEDWATCH_THREADS");
    if (!v || !*v) return 0;
    int n = std::atoi(v);
    return n < 0 ? 0 : n;
}

std::atomic<int> g_cap{-1};  // -1 = not yet initialized from the environment

}  // namespace

int thread_cap() {
    int c = g_cap.load(std::memory_order_relaxed);
    if (c < 0) {
        c = env_cap();
        g_cap.store(c, std::memory_order_relaxed);
    }
    return c;
}

void set_thread_cap(int cap) { g_cap.store(cap < 0 ? 0 : cap, std::memory_order_relaxed); }

int resolve_threads(std::size_t items) {
    int cap = thread_cap();
    int hw = omp_get_max_threads();
    int n = (cap == 0) ? hw : (cap < hw ? cap : hw);
    if (items < static_cast<std::size_t>(n)) n = static_cast<int>(items);
    return n < 1 ? 1 : n;
}

}  // namespace feedwatch
