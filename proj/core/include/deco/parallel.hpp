// parallel.hpp — Deterministic block-parallel trajectory execution
#pragma once

#include <cstddef>
#include <functional>

namespace deco::util {

// Trajectories are partitioned into fixed-size blocks. Workers may process
// blocks in any order, but each block's accumulator is reduced afterwards in
// ascending block order, so results are identical for every thread count.
inline constexpr std::size_t kTrajectoryBlock = 64;

inline std::size_t block_count(std::size_t n_items, std::size_t block_size) {
    return (n_items + block_size - 1) / block_size;
}

// Calls fn(block_index, begin, end) once per block; fn must only touch state
// owned by its block.
void for_each_block(std::size_t n_items, std::size_t block_size, int threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace deco::util
