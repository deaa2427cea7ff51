#pragma once

#include <cstdint>
#include <functional>

namespace schurlab {

// Thread count from SCHURLAB_THREADS, else hardware concurrency (>= 1).
int default_threads();

// Stateless 64-bit mix used to derive per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Runs body(i) for i in [0, count) on up to `threads` workers.
// Work is assigned by index, so results do not depend on the thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace schurlab
