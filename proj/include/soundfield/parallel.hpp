// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <functional>

namespace soundfield {

// Upper bound on worker threads used by ParallelFor. 0 restores the default
// (std::thread::hardware_concurrency()).
void SetMaxThreads(unsigned threads);
unsigned MaxThreads();

// Runs fn(i) for i in [0, n). Iterations must be independent; results are
// therefore identical for any thread count. Nested calls run serially. The
// first exception thrown by any iteration is rethrown on the caller.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace soundfield
