#pragma once

#include <cstddef>
#include <functional>

namespace tilekit {

// worker count: hardware concurrency capped by TILEKIT_THREADS
unsigned thread_count();

// runs f(i) for i in [0, n); f must be safe to call concurrently
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace tilekit
