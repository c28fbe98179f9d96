#pragma once

#include <cstdint>
#include <span>

#include "sdude/channel.hpp"
#include "sdude/grid.hpp"

namespace sdude {

// Counter-based uniform stream: draw i depends only on (seed, stream, i),
// never on the order in which draws are taken.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const;
  // Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Passes every non-padding cell through the channel independently; cell i
// (row-major) consumes draw i. Padding cells are copied unchanged.
Grid corrupt(const Grid& clean, const ChannelModel& channel, std::uint64_t seed);

// Fraction of region cells where the two grids differ.
double ber(const Grid& clean, const Grid& reconstructed, std::span<const Coord> region);

} // namespace sdude
