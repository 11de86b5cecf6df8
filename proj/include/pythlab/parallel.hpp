#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace pythlab {

// Worker count from PYTHLAB_THREADS (default 1, clamped to [1, 64]).
unsigned thread_budget();

// Lowest index in [0, count) satisfying pred, scanning in parallel. The result is
// the same as a sequential scan regardless of thread count.
std::optional<std::size_t> find_first(std::size_t count, const std::function<bool(std::size_t)>& pred,
                                      unsigned threads = thread_budget());

}  // namespace pythlab
