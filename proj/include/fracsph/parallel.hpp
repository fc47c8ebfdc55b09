#pragma once

#include <cstddef>
#include <functional>

namespace fracsph {

/// Worker count: hardware concurrency, capped by the FRACSPH_THREADS environment variable.
std::size_t thread_count();

/// Runs body(begin, end) over disjoint chunks of [0, n). Rethrows the first worker exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fracsph
