#pragma once
#include <cstddef>
#include <functional>

namespace necklace {

// Worker count: hardware concurrency, capped by NECKLACE_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index must write only to its own slot, so the
// result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace necklace
