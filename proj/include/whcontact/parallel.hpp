#pragma once

#include <cstddef>
#include <functional>

namespace whcontact {

/// Worker count: WHCONTACT_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
unsigned thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers. Exceptions
/// thrown by body are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace whcontact
