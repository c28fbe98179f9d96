#include "sdude/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>

namespace sdude {

namespace {

// Hilbert index -> (x, y) on a side x side lattice, side a power of two.
Coord hilbert_point(int side, std::size_t d) {
  int x = 0;
  int y = 0;
  std::size_t t = d;
  for (int s = 1; s < side; s *= 2) {
    int rx = 1 & static_cast<int>(t / 2);
    int ry = 1 & static_cast<int>(t ^ static_cast<std::size_t>(rx));
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
    x += s * rx;
    y += s * ry;
    t /= 4;
  }
  return {y, x};
}

} // namespace

PHOrder::PHOrder(int log2_side) {
  if (log2_side < 0 || log2_side > 15) throw DomainError("PH order supports 0 <= r <= 15");
  side_ = 1 << log2_side;
  const std::size_t n = static_cast<std::size_t>(side_) * side_;
  coords_.resize(n);
  index_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Coord c = hilbert_point(side_, i);
    coords_[i] = c;
    index_[static_cast<std::size_t>(c.row) * side_ + c.col] = static_cast<std::uint32_t>(i);
  }
}

PHOrder ph_order(int log2_side) { return PHOrder(log2_side); }

const PHOrder& shared_ph_order(int log2_side) {
  static std::mutex mutex;
  static std::array<std::unique_ptr<const PHOrder>, 16> cache;
  if (log2_side < 0 || log2_side > 15) throw DomainError("PH order supports 0 <= r <= 15");
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(log2_side)];
  if (!slot) slot = std::make_unique<const PHOrder>(log2_side);
  return *slot;
}

std::vector<Coord> raster_order(int side) {
  if (side < 1) throw DomainError("raster order needs a positive side");
  std::vector<Coord> out;
  out.reserve(static_cast<std::size_t>(side) * side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) out.push_back({r, c});
  return out;
}

ContextNeighborhood spiral_offsets(int k) {
  if (k < 0) throw DomainError("context order must be non-negative");
  ContextNeighborhood nb;
  nb.order = k;
  nb.margin = context_margin(k);
  if (k == 0) return nb;

  // Any lattice point within Euclidean radius R lies in the box, and the box
  // holds more than 2k such points, so the sorted prefix is the global one.
  const int radius = static_cast<int>(std::ceil(std::sqrt(2.0 * k))) + 2;
  std::vector<Coord> pts;
  for (int r = -radius; r <= radius; ++r)
    for (int c = -radius; c <= radius; ++c)
      if (r != 0 || c != 0) pts.push_back({r, c});
  std::sort(pts.begin(), pts.end(), [](Coord a, Coord b) {
    int da = a.row * a.row + a.col * a.col;
    int db = b.row * b.row + b.col * b.col;
    if (da != db) return da < db;
    return a < b;
  });
  nb.offsets.assign(pts.begin(), pts.begin() + 2 * k);
  for (Coord o : nb.offsets)
    if (std::max(std::abs(o.row), std::abs(o.col)) > nb.margin)
      throw DomainError("context offsets exceed the ceil(k/4) margin");
  return nb;
}

void check_context_capacity(Alphabet noisy, int digits) {
  if (digits <= 0 || noisy.size <= 1) return;
  const double bits = digits * std::log2(static_cast<double>(noisy.size));
  if (bits >= 63.0) throw DomainError("context too large to pack into 64 bits");
}

bool in_interior(const Grid& grid, Coord t, int margin) {
  return t.row >= margin && t.col >= margin && t.row < grid.side() - margin &&
         t.col < grid.side() - margin;
}

std::vector<Coord> interior_region(const Grid& grid, int margin) {
  std::vector<Coord> out;
  for (int r = margin; r < grid.side() - margin; ++r)
    for (int c = margin; c < grid.side() - margin; ++c)
      if (!grid.is_padding({r, c})) out.push_back({r, c});
  return out;
}

ContextId context_at(const Grid& noisy, Coord t, const ContextNeighborhood& nb) {
  if (!in_interior(noisy, t, nb.margin)) throw DomainError("context requested outside the interior");
  const ContextId base = static_cast<ContextId>(noisy.alphabet().size);
  ContextId id = 0;
  for (std::size_t j = nb.offsets.size(); j-- > 0;) {
    Coord o = nb.offsets[j];
    id = id * base + noisy[{t.row + o.row, t.col + o.col}];
  }
  return id;
}

ContextId context_1d(std::span<const Symbol> seq, std::size_t t, int k, Alphabet noisy) {
  const std::size_t kk = static_cast<std::size_t>(k);
  if (k < 0 || t < kk || t + kk >= seq.size()) throw DomainError("1-D context outside the sequence interior");
  const ContextId base = static_cast<ContextId>(noisy.size);
  ContextId id = 0;
  for (std::size_t j = kk; j-- > 0;) id = id * base + seq[t + 1 + j];
  for (std::size_t j = kk; j-- > 0;) id = id * base + seq[t - kk + j];
  return id;
}

void write_ph_csv(std::ostream& out, const PHOrder& order) {
  out << "index,row,col\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    Coord c = order.to_coord(i);
    out << i << ',' << c.row << ',' << c.col << '\n';
  }
}

} // namespace sdude
