#include "sdude/channel_sim.hpp"

namespace sdude {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return splitmix64(splitmix64(seed_ ^ splitmix64(stream_)) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

Grid corrupt(const Grid& clean, const ChannelModel& channel, std::uint64_t seed) {
  require_valid_channel(channel);
  const int nx = channel.clean_alphabet().size;
  const int nz = channel.noisy_alphabet().size;
  if (clean.alphabet().size > nx) throw DomainError("clean alphabet exceeds the channel input alphabet");

  const CounterRng rng(seed);
  std::vector<Symbol> out(clean.data().begin(), clean.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Coord t{static_cast<int>(i / clean.side()), static_cast<int>(i % clean.side())};
    if (clean.is_padding(t)) continue;
    const int x = clean.at(i);
    const double u = rng.uniform(i);
    // Inverse CDF; rounding slack falls to the last symbol with mass.
    int z = nz - 1;
    while (z > 0 && channel(x, z) == 0.0) --z;
    double acc = 0.0;
    for (int c = 0; c < nz; ++c) {
      acc += channel(x, c);
      if (u < acc) {
        z = c;
        break;
      }
    }
    out[i] = static_cast<Symbol>(z);
  }
  // Padding keeps symbol 0, which every alphabet contains.
  return clean.with_data(std::move(out), channel.noisy_alphabet());
}

double ber(const Grid& clean, const Grid& reconstructed, std::span<const Coord> region) {
  if (region.empty()) throw DomainError("BER region is empty");
  if (clean.side() != reconstructed.side()) throw DomainError("grids differ in size");
  std::size_t errors = 0;
  for (Coord t : region) {
    if (!clean.in_bounds(t)) throw DomainError("BER region contains an out-of-bounds cell");
    errors += clean[t] != reconstructed[t];
  }
  return static_cast<double>(errors) / static_cast<double>(region.size());
}

} // namespace sdude
