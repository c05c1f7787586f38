// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstddef>
#include <functional>

namespace motskit {

/// Worker-count cap: MOTSKIT_THREADS env var, else hardware concurrency,
/// clamped to [1, 64].
int thread_cap();

/// Runs fn(i) for i in [0, count) on up to thread_cap() workers with a static
/// index partition. Each index writes only its own output slots, so results
/// are bitwise independent of the worker count. Exceptions from workers are
/// captured and rethrown (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace motskit
