#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sdude/grid.hpp"

namespace sdude {

// Peano-Hilbert linearization of a 2^r x 2^r lattice. Every dyadic quadrant
// is visited in one contiguous run of indices.
class PHOrder {
public:
  explicit PHOrder(int log2_side);

  int side() const { return side_; }
  std::size_t size() const { return coords_.size(); }
  Coord to_coord(std::size_t i) const { return coords_[i]; }
  std::size_t to_index(Coord t) const {
    return index_[static_cast<std::size_t>(t.row) * side_ + t.col];
  }
  std::span<const Coord> coords() const { return coords_; }

private:
  int side_;
  std::vector<Coord> coords_;
  std::vector<std::uint32_t> index_;
};

PHOrder ph_order(int log2_side);

// Process-wide immutable instance per side, built on first use. Thread safe.
const PHOrder& shared_ph_order(int log2_side);

// Row-major enumeration of an N x N lattice.
std::vector<Coord> raster_order(int side);

// The first 2k offsets of the lattice sorted by Euclidean distance to the
// origin, ties broken by (row, col). margin = ceil(k/4) bounds every offset in
// max-norm, so a cell whose distance to the border is at least `margin` has
// its full context in bounds.
struct ContextNeighborhood {
  int order = 0;
  int margin = 0;
  std::vector<Coord> offsets;
};

ContextNeighborhood spiral_offsets(int k);

inline int context_margin(int k) { return (k + 3) / 4; }

// Packed base-|Z| digits of the context symbols, first offset least
// significant.
using ContextId = std::uint64_t;

// Throws DomainError when |Z|^digits does not fit the 64-bit context id.
void check_context_capacity(Alphabet noisy, int digits);

// Interior {t : margin <= row, col < N - margin}, excluding padded cells,
// in row-major order.
std::vector<Coord> interior_region(const Grid& grid, int margin);
bool in_interior(const Grid& grid, Coord t, int margin);

// Context of t; t must lie in the interior of the neighbourhood's margin.
ContextId context_at(const Grid& noisy, Coord t, const ContextNeighborhood& nb);

// Two-sided k-th order context of position t in a 1-D sequence:
// (z_{t-k}, ..., z_{t-1}, z_{t+1}, ..., z_{t+k}). Requires k <= t < n - k.
ContextId context_1d(std::span<const Symbol> seq, std::size_t t, int k, Alphabet noisy);

// CSV dumps for inspection: "index,row,col".
void write_ph_csv(std::ostream& out, const PHOrder& order);

} // namespace sdude
