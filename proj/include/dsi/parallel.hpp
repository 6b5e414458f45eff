#pragma once

#include <cstddef>
#include <functional>

namespace dsi {

/// Worker count from DSI_LAB_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, count) over contiguous chunks. Each index is
/// visited exactly once; bodies must write only to their own slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace dsi
