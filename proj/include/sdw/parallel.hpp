#pragma once

#include <cstddef>
#include <functional>

namespace sdw {

/// Worker cap for all parallel loops (default: hardware concurrency).
/// Results never depend on this value.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; the
/// caller writes results into per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sdw
