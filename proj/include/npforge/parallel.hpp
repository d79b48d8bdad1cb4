// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace npforge {

/// Worker cap from NPFORGE_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers.
/// Each index runs exactly once; callers write results into slot i so the
/// output order never depends on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace npforge
