#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace d2d {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Stream `k` of base seed `seed`; streams are what make results independent of worker count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(derive_seed(seed, stream)); }

// 0 = hardware concurrency. Also read from D2D_EFFCAP_THREADS at first use.
void set_worker_count(int n);
int worker_count();

// Calls fn(i) for i in [0, n). Each index must write only its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace d2d
