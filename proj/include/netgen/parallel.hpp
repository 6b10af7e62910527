// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_PARALLEL_HPP
#define NETGEN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace netgen {

/// Worker count used when a caller passes 0: $NETGEN_THREADS if set,
/// otherwise std::thread::hardware_concurrency().
unsigned default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Items are
/// independent; the first exception thrown by any item is rethrown here
/// after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace netgen

#endif  // NETGEN_PARALLEL_HPP
