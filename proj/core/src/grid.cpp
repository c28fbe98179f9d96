#include "sdude/grid.hpp"

#include <algorithm>
#include <bit>

namespace sdude {

bool is_power_of_two(int v) { return v > 0 && std::has_single_bit(static_cast<unsigned>(v)); }

int next_power_of_two(int v) {
  if (v <= 1) return 1;
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(v)));
}

Grid::Grid(int side, Alphabet alphabet, Symbol fill)
    : side_(side), rows_(side), cols_(side), alphabet_(alphabet) {
  if (!is_power_of_two(side)) throw DomainError("grid side must be a power of two");
  if (alphabet.size < 1 || alphabet.size > 256) throw DomainError("grid alphabet size out of range");
  if (fill >= alphabet.size) throw DomainError("fill symbol outside the alphabet");
  data_.assign(static_cast<std::size_t>(side) * side, fill);
  pad_.assign(data_.size(), 0);
}

Grid Grid::from_rows(int rows, int cols, Alphabet alphabet, std::span<const Symbol> data) {
  if (rows < 1 || cols < 1) throw DomainError("image must have at least one row and column");
  if (data.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("payload size does not match rows x cols");
  Grid g(next_power_of_two(std::max(rows, cols)), alphabet);
  g.rows_ = rows;
  g.cols_ = cols;
  std::fill(g.pad_.begin(), g.pad_.end(), 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Symbol v = data[static_cast<std::size_t>(r) * cols + c];
      if (v >= alphabet.size) throw DomainError("symbol outside the declared alphabet");
      g.data_[g.index({r, c})] = v;
      g.pad_[g.index({r, c})] = 0;
    }
  return g;
}

int Grid::log2_side() const { return std::countr_zero(static_cast<unsigned>(side_)); }

void Grid::set(Coord t, Symbol v) {
  if (v >= alphabet_.size) throw DomainError("symbol outside the grid alphabet");
  data_[index(t)] = v;
}

std::size_t Grid::padding_count() const {
  return static_cast<std::size_t>(std::count(pad_.begin(), pad_.end(), std::uint8_t{1}));
}

Grid Grid::with_data(std::vector<Symbol> data, Alphabet alphabet) const {
  if (data.size() != data_.size()) throw DomainError("payload size does not match the grid");
  Grid g = *this;
  g.alphabet_ = alphabet;
  for (Symbol v : data)
    if (v >= alphabet.size) throw DomainError("symbol outside the declared alphabet");
  g.data_ = std::move(data);
  return g;
}

std::vector<Symbol> Grid::cropped() const {
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.push_back(data_[index({r, c})]);
  return out;
}

std::vector<Coord> data_region(const Grid& grid) {
  std::vector<Coord> out;
  out.reserve(grid.cell_count() - grid.padding_count());
  for (int r = 0; r < grid.side(); ++r)
    for (int c = 0; c < grid.side(); ++c)
      if (!grid.is_padding({r, c})) out.push_back({r, c});
  return out;
}

SwitchingSchedule::SwitchingSchedule(int side) : side_(side) {
  if (side < 1) throw DomainError("schedule side must be positive");
  assignment_.assign(static_cast<std::size_t>(side) * side, kUncovered);
}

SwitchingSchedule SwitchingSchedule::uniform(int side, std::span<const Coord> region, DenoiserCode s) {
  SwitchingSchedule out(side);
  for (Coord t : region) out.assign(t, s);
  return out;
}

void SwitchingSchedule::assign(Coord t, DenoiserCode s) {
  if (t.row < 0 || t.col < 0 || t.row >= side_ || t.col >= side_)
    throw DomainError("schedule coordinate out of bounds");
  auto& slot = assignment_[static_cast<std::size_t>(t.row) * side_ + t.col];
  if (slot == kUncovered) ++covered_;
  slot = s;
}

bool SwitchingSchedule::covers(Coord t) const { return at(t).has_value(); }

std::optional<DenoiserCode> SwitchingSchedule::at(Coord t) const {
  if (t.row < 0 || t.col < 0 || t.row >= side_ || t.col >= side_) return std::nullopt;
  auto v = assignment_[static_cast<std::size_t>(t.row) * side_ + t.col];
  if (v == kUncovered) return std::nullopt;
  return static_cast<DenoiserCode>(v);
}

std::vector<Coord> SwitchingSchedule::covered() const {
  std::vector<Coord> out;
  out.reserve(covered_);
  for (int r = 0; r < side_; ++r)
    for (int c = 0; c < side_; ++c)
      if (assignment_[static_cast<std::size_t>(r) * side_ + c] != kUncovered) out.push_back({r, c});
  return out;
}

namespace {

void check_region(const Grid& grid, const SwitchingSchedule& schedule, std::span<const Coord> region) {
  if (region.empty()) throw DomainError("loss region is empty");
  if (schedule.side() != grid.side()) throw DomainError("schedule and grid sides differ");
  for (Coord t : region) {
    if (!grid.in_bounds(t)) throw DomainError("loss region contains an out-of-bounds cell");
    if (grid.is_padding(t)) throw DomainError("loss region contains a padded cell");
    if (!schedule.covers(t)) throw DomainError("schedule does not cover the loss region");
  }
}

} // namespace

double cumulative_true_loss(const Grid& clean, const Grid& noisy, const SwitchingSchedule& schedule,
                            const LossFunction& loss, std::span<const Coord> region) {
  if (clean.side() != noisy.side()) throw DomainError("clean and noisy grids differ in size");
  check_region(noisy, schedule, region);
  DenoiserSpace space(noisy.alphabet(), loss.recon_alphabet());
  double total = 0.0;
  for (Coord t : region) {
    if (clean[t] >= loss.clean_alphabet().size) throw DomainError("clean symbol outside the loss alphabet");
    total += loss(clean[t], space.apply(*schedule.at(t), noisy[t]));
  }
  return total / static_cast<double>(region.size());
}

double cumulative_estimated_loss(const Grid& noisy, const SwitchingSchedule& schedule,
                                 const EstimatedLossTable& table, std::span<const Coord> region) {
  check_region(noisy, schedule, region);
  double total = 0.0;
  for (Coord t : region) total += table(noisy[t], *schedule.at(t));
  return total / static_cast<double>(region.size());
}

} // namespace sdude
