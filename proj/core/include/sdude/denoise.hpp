#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sdude/channel.hpp"
#include "sdude/geometry.hpp"
#include "sdude/grid.hpp"

namespace sdude {

enum class Mode {
  Dude1dRaster,   // raster scan, 1-D two-sided contexts, one denoiser per context
  Sdude1dRaster,  // raster scan, 1-D contexts, switching along the scan
  Dude2d,         // 2-D spiral contexts, one denoiser per context
  Sdude2d,        // 2-D contexts, switching along the Peano-Hilbert scan
};

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);
bool is_switching(Mode mode);

struct DenoiseConfig {
  int k = 0;
  int m = 0;  // ignored by the non-switching modes
  Mode mode = Mode::Sdude2d;
};

// Cells that share a context, each group listed in scan order. Group g
// occupies cells[offsets[g] .. offsets[g+1]).
struct ContextGroups {
  std::vector<ContextId> ids;
  std::vector<std::size_t> offsets;
  std::vector<Coord> cells;

  std::size_t size() const { return ids.size(); }
  std::span<const Coord> group(std::size_t g) const {
    return std::span<const Coord>(cells).subspan(offsets[g], offsets[g + 1] - offsets[g]);
  }
};

// 2-D k-th order contexts over the interior, ordered by the Peano-Hilbert scan.
ContextGroups group_by_context_2d(const Grid& noisy, int k);
// 1-D k-th order contexts of the raster-scanned grid, ordered by the raster scan.
ContextGroups group_by_context_raster(const Grid& noisy, int k);
ContextGroups group_by_context(const Grid& noisy, int k, Mode mode);

struct ContextGroupSummary {
  ContextId context = 0;
  std::size_t size = 0;
  int budget = 0;  // min(m, n(c)) for the switching modes, 0 otherwise
  int switches = 0;
};

struct DenoiseResult {
  SwitchingSchedule schedule;
  Grid reconstructed;
  std::vector<ContextGroupSummary> groups;
  // Normalized estimated loss of the schedule over its covered cells.
  double estimated_loss = 0.0;
};

// Cells outside the covered region are passed through unchanged.
DenoiseResult denoise(const Grid& noisy, const DenoiseConfig& config, const EstimatedLossTable& table);
DenoiseResult denoise(const Grid& noisy, const DenoiseConfig& config, const ChannelModel& channel,
                      const LossFunction& loss);

// x̂_t = s_t(z_t) on covered cells, x̂_t = z_t elsewhere.
Grid apply_schedule(const Grid& noisy, const SwitchingSchedule& schedule, const DenoiserSpace& space);

// "row,col,denoiser" CSV, header included.
void write_schedule_csv(std::ostream& out, const SwitchingSchedule& schedule);
SwitchingSchedule read_schedule_csv(std::istream& in, int side);

} // namespace sdude
