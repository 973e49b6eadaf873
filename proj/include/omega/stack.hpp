#pragma once

#include <functional>

namespace omega {

/// Runs fn on a thread with a large stack and returns its result. Deeply
/// nested evaluations recurse on the native stack.
int runWithLargeStack(const std::function<int()>& fn, std::size_t bytes = std::size_t{1} << 30);

}  // namespace omega
