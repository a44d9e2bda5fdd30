#pragma once

#include <cstdint>
#include <functional>

namespace periodiag::detail {

/// Runs body(0..n-1) on a small thread pool. The iteration space is split
/// by index, so results written to per-index slots are identical to a
/// sequential run. Thread count comes from the PERIODIAG_THREADS
/// environment variable, else hardware concurrency (capped at 16).
void parallel_for(int n, const std::function<void(int)>& body);

/// Counter-based seed derivation (splitmix64 mixing), so replicate streams
/// are independent of scheduling and of each other.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t substream = 0);

}  // namespace periodiag::detail
