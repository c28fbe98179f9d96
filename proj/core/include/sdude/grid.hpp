#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sdude/channel.hpp"

namespace sdude {

// Zero-based lattice coordinate (row, col).
struct Coord {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

bool is_power_of_two(int v);
int next_power_of_two(int v);

// Square N x N array of symbols with N a power of two. Inputs that are not
// square or not dyadic are embedded in the top-left corner and the remaining
// cells are filled with symbol 0 and flagged in the pad mask.
class Grid {
public:
  Grid(int side, Alphabet alphabet, Symbol fill = 0);

  // rows x cols row-major payload, padded up to the next dyadic square.
  static Grid from_rows(int rows, int cols, Alphabet alphabet, std::span<const Symbol> data);

  int side() const { return side_; }
  int log2_side() const;
  std::size_t cell_count() const { return data_.size(); }
  // Extent of the original (unpadded) payload.
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Alphabet alphabet() const { return alphabet_; }

  std::size_t index(Coord t) const { return static_cast<std::size_t>(t.row) * side_ + t.col; }
  bool in_bounds(Coord t) const {
    return t.row >= 0 && t.col >= 0 && t.row < side_ && t.col < side_;
  }

  Symbol operator[](Coord t) const { return data_[index(t)]; }
  Symbol at(std::size_t i) const { return data_[i]; }
  void set(Coord t, Symbol v);
  bool is_padding(Coord t) const { return pad_[index(t)] != 0; }
  std::size_t padding_count() const;

  std::span<const Symbol> data() const { return data_; }
  // Same padding layout, new payload.
  Grid with_data(std::vector<Symbol> data, Alphabet alphabet) const;
  // Original rows x cols payload without padding.
  std::vector<Symbol> cropped() const;

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  int side_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  Alphabet alphabet_;
  std::vector<Symbol> data_;
  std::vector<std::uint8_t> pad_;
};

// Every non-padding cell in row-major order.
std::vector<Coord> data_region(const Grid& grid);

// Assignment of a single-symbol denoiser to each covered cell.
class SwitchingSchedule {
public:
  explicit SwitchingSchedule(int side);

  static SwitchingSchedule uniform(int side, std::span<const Coord> region, DenoiserCode s);

  int side() const { return side_; }
  void assign(Coord t, DenoiserCode s);
  bool covers(Coord t) const;
  std::optional<DenoiserCode> at(Coord t) const;
  // Covered cells, row-major.
  std::vector<Coord> covered() const;
  std::size_t covered_count() const { return covered_; }

  friend bool operator==(const SwitchingSchedule&, const SwitchingSchedule&) = default;

private:
  static constexpr std::int64_t kUncovered = -1;
  int side_ = 0;
  std::size_t covered_ = 0;
  std::vector<std::int64_t> assignment_;
};

// (1/|region|) sum_t Λ(x_t, s_t(z_t)).
double cumulative_true_loss(const Grid& clean, const Grid& noisy, const SwitchingSchedule& schedule,
                            const LossFunction& loss, std::span<const Coord> region);

// (1/|region|) sum_t ℓ(z_t, s_t).
double cumulative_estimated_loss(const Grid& noisy, const SwitchingSchedule& schedule,
                                 const EstimatedLossTable& table, std::span<const Coord> region);

} // namespace sdude
