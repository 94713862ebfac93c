#pragma once

#include <cstdint>
#include <random>

namespace arfs {

using Rng = std::mt19937_64;

/// Mixes a master seed with a stream id into an independent seed (splitmix64).
///
/// Parallel work never shares an engine. Each task draws from
/// `Rng(derive_seed(base, task_index))`, which keeps results identical
/// regardless of how tasks are scheduled onto threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

/// Draws a fresh base seed from `rng` for fanning out into substreams.
inline std::uint64_t draw_seed(Rng& rng) { return rng(); }

} // namespace arfs
