#pragma once

#include <cstddef>
#include <functional>

namespace bergman {

// Process-wide worker count used by the module-level parallel maps.
void set_workers(int n);
int workers();

// Calls fn(i) for i in [0, n). Results must be written to per-index slots so
// that output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bergman
