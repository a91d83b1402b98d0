#pragma once

#include <cstddef>
#include <functional>

namespace psibound {

// Process-wide cap on worker threads (default: hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(block) for block in [0, blocks) on up to max_threads() threads.
// Blocks are independent; callers combine per-block results in index order so
// results do not depend on the thread count.
void parallel_for_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

}  // namespace psibound
