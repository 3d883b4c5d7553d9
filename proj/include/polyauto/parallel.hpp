#pragma once

#include <cstddef>
#include <functional>

namespace polyauto {

// Explicit request, else POLYAUTO_THREADS, else hardware concurrency.
int resolve_threads(int requested);

// fn(i) for i in [0, n); each index writes only its own result slot.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace polyauto
