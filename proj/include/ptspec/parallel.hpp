#pragma once

#include <cstddef>
#include <functional>

namespace ptspec {

/// Run fn(i) for i in [0, n) on up to `workers` threads (0 = hardware default).
/// Tasks are split into contiguous chunks; fn must write only to its own slot.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

unsigned default_workers();

}  // namespace ptspec
