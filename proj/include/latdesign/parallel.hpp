#pragma once

#include <cstddef>
#include <functional>

namespace latdesign {

// 0 means "LATDESIGN_THREADS if set, otherwise hardware concurrency".
unsigned resolve_threads(unsigned requested);

// Runs body(task) for task in [0, tasks) on up to `threads` workers.
// Tasks are claimed dynamically; body must only touch task-local state.
void parallel_for(std::size_t tasks, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace latdesign
