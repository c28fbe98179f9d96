#include "sdude/denoise.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "sdude/switching_dp.hpp"

namespace sdude {

std::string_view to_string(Mode mode) {
  switch (mode) {
  case Mode::Dude1dRaster: return "dude-1d-raster";
  case Mode::Sdude1dRaster: return "sdude-1d-raster";
  case Mode::Dude2d: return "dude-2d";
  case Mode::Sdude2d: return "sdude-2d";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::Dude1dRaster, Mode::Sdude1dRaster, Mode::Dude2d, Mode::Sdude2d})
    if (text == to_string(m)) return m;
  throw DomainError("unknown denoising mode '" + std::string(text) + "'");
}

bool is_switching(Mode mode) { return mode == Mode::Sdude1dRaster || mode == Mode::Sdude2d; }

namespace {

struct Keyed {
  ContextId ctx;
  std::uint32_t pos;
};

// Groups ordered by context id; within a group, cells keep the order in which
// they appear in `keyed`, which callers supply sorted by scan position.
ContextGroups assemble(const std::vector<Keyed>& keyed, std::span<const Coord> scan) {
  std::unordered_map<ContextId, std::uint32_t> dense;
  std::vector<std::uint32_t> label(keyed.size());
  std::vector<ContextId> ids;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    auto [it, fresh] = dense.try_emplace(keyed[i].ctx, static_cast<std::uint32_t>(ids.size()));
    if (fresh) ids.push_back(keyed[i].ctx);
    label[i] = it->second;
  }
  std::vector<std::uint32_t> rank(ids.size());
  std::vector<std::uint32_t> by_id(ids.size());
  for (std::uint32_t d = 0; d < by_id.size(); ++d) by_id[d] = d;
  std::sort(by_id.begin(), by_id.end(), [&](std::uint32_t a, std::uint32_t b) { return ids[a] < ids[b]; });
  for (std::uint32_t r = 0; r < by_id.size(); ++r) rank[by_id[r]] = r;

  ContextGroups g;
  g.ids.resize(ids.size());
  g.offsets.assign(ids.size() + 1, 0);
  for (std::uint32_t r = 0; r < by_id.size(); ++r) g.ids[r] = ids[by_id[r]];
  for (std::uint32_t d : label) ++g.offsets[rank[d] + 1];
  for (std::size_t r = 0; r < ids.size(); ++r) g.offsets[r + 1] += g.offsets[r];
  std::vector<std::size_t> fill(g.offsets.begin(), g.offsets.end() - 1);
  g.cells.resize(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) g.cells[fill[rank[label[i]]]++] = scan[keyed[i].pos];
  return g;
}

} // namespace

ContextGroups group_by_context_2d(const Grid& noisy, int k) {
  const ContextNeighborhood nb = spiral_offsets(k);
  check_context_capacity(noisy.alphabet(), 2 * k);
  const int side = noisy.side();
  const int lo = nb.margin;
  const int hi = side - nb.margin;
  if (lo >= hi) throw DomainError("context order too large for the grid: empty interior");

  // Same packing as context_at, on flat offsets over the raster layout.
  std::vector<std::ptrdiff_t> flat;
  for (std::size_t j = nb.offsets.size(); j-- > 0;)
    flat.push_back(static_cast<std::ptrdiff_t>(nb.offsets[j].row) * side + nb.offsets[j].col);
  const ContextId base = static_cast<ContextId>(noisy.alphabet().size);
  const Symbol* data = noisy.data().data();
  std::vector<ContextId> ctx(noisy.cell_count());
  for (int r = lo; r < hi; ++r)
    for (int c = lo; c < hi; ++c) {
      const Symbol* cell = data + static_cast<std::ptrdiff_t>(r) * side + c;
      ContextId id = 0;
      for (std::ptrdiff_t o : flat) id = id * base + cell[o];
      ctx[static_cast<std::size_t>(r) * side + c] = id;
    }

  const PHOrder& order = shared_ph_order(noisy.log2_side());
  std::vector<Keyed> keyed;
  keyed.reserve(static_cast<std::size_t>(hi - lo) * (hi - lo));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Coord t = order.to_coord(i);
    if (t.row < lo || t.col < lo || t.row >= hi || t.col >= hi || noisy.is_padding(t)) continue;
    keyed.push_back({ctx[noisy.index(t)], static_cast<std::uint32_t>(i)});
  }
  if (keyed.empty()) throw DomainError("context order too large for the grid: empty interior");
  return assemble(keyed, order.coords());
}

ContextGroups group_by_context_raster(const Grid& noisy, int k) {
  if (k < 0) throw DomainError("context order must be non-negative");
  check_context_capacity(noisy.alphabet(), 2 * k);
  const std::vector<Coord> scan = raster_order(noisy.side());
  std::vector<Symbol> seq(noisy.data().begin(), noisy.data().end());
  const std::size_t kk = static_cast<std::size_t>(k);
  std::vector<Keyed> keyed;
  for (std::size_t t = kk; t + kk < seq.size(); ++t) {
    if (noisy.is_padding(scan[t])) continue;
    keyed.push_back({context_1d(seq, t, k, noisy.alphabet()), static_cast<std::uint32_t>(t)});
  }
  if (keyed.empty()) throw DomainError("context order too large for the grid: empty interior");
  return assemble(keyed, scan);
}

ContextGroups group_by_context(const Grid& noisy, int k, Mode mode) {
  return (mode == Mode::Dude2d || mode == Mode::Sdude2d) ? group_by_context_2d(noisy, k)
                                                         : group_by_context_raster(noisy, k);
}

DenoiseResult denoise(const Grid& noisy, const DenoiseConfig& config, const EstimatedLossTable& table) {
  if (config.k < 0) throw DomainError("context order must be non-negative");
  if (is_switching(config.mode) && config.m < 0) throw DomainError("switch budget must be non-negative");
  const DenoiserSpace& space = table.space();
  if (noisy.alphabet().size > space.noisy_alphabet().size)
    throw DomainError("grid alphabet exceeds the channel output alphabet");

  const ContextGroups groups = group_by_context(noisy, config.k, config.mode);
  SwitchingSchedule schedule(noisy.side());
  std::vector<ContextGroupSummary> summaries;
  summaries.reserve(groups.size());
  double total = 0.0;
  std::vector<Symbol> seq;

  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto cells = groups.group(g);
    seq.clear();
    for (Coord t : cells) seq.push_back(noisy[t]);
    const CostMatrix costs = estimated_costs(seq, table);

    ContextGroupSummary summary{groups.ids[g], cells.size(), 0, 0};
    if (is_switching(config.mode)) {
      summary.budget = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.m), cells.size()));
      SwitchingSolution sol = best_switching(costs, summary.budget);
      summary.switches = sol.switches;
      for (std::size_t i = 0; i < cells.size(); ++i) schedule.assign(cells[i], sol.assignment[i]);
    } else {
      const DenoiserCode s = best_fixed_denoiser(costs);
      for (Coord t : cells) schedule.assign(t, s);
    }
    for (std::size_t i = 0; i < cells.size(); ++i) total += costs(i, *schedule.at(cells[i]));
    summaries.push_back(summary);
  }

  Grid reconstructed = apply_schedule(noisy, schedule, space);
  const double covered = static_cast<double>(schedule.covered_count());
  return DenoiseResult{std::move(schedule), std::move(reconstructed), std::move(summaries), total / covered};
}

DenoiseResult denoise(const Grid& noisy, const DenoiseConfig& config, const ChannelModel& channel,
                      const LossFunction& loss) {
  return denoise(noisy, config, build_estimated_loss(channel, loss));
}

Grid apply_schedule(const Grid& noisy, const SwitchingSchedule& schedule, const DenoiserSpace& space) {
  if (schedule.side() != noisy.side()) throw DomainError("schedule and grid sides differ");
  const Alphabet out_alphabet{std::max(noisy.alphabet().size, space.recon_alphabet().size)};
  std::vector<Symbol> out(noisy.data().begin(), noisy.data().end());
  for (int r = 0; r < noisy.side(); ++r)
    for (int c = 0; c < noisy.side(); ++c)
      if (auto s = schedule.at({r, c})) {
        if (*s >= space.size()) throw DomainError("schedule holds an unknown denoiser code");
        out[noisy.index({r, c})] = space.apply(*s, noisy[{r, c}]);
      }
  return noisy.with_data(std::move(out), out_alphabet);
}

void write_schedule_csv(std::ostream& out, const SwitchingSchedule& schedule) {
  out << "row,col,denoiser\n";
  for (Coord t : schedule.covered()) out << t.row << ',' << t.col << ',' << *schedule.at(t) << '\n';
}

SwitchingSchedule read_schedule_csv(std::istream& in, int side) {
  SwitchingSchedule schedule(side);
  std::string line;
  if (!std::getline(in, line) || line.rfind("row,col,denoiser", 0) != 0)
    throw FormatError("schedule CSV must start with the header 'row,col,denoiser'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    long long r = 0, c = 0, s = 0;
    char comma1 = 0, comma2 = 0;
    if (!(fields >> r >> comma1 >> c >> comma2 >> s) || comma1 != ',' || comma2 != ',' || s < 0)
      throw FormatError("bad schedule CSV line " + std::to_string(lineno));
    if (r < 0 || c < 0 || r >= side || c >= side)
      throw FormatError("schedule CSV line " + std::to_string(lineno) + " is out of bounds");
    schedule.assign({static_cast<int>(r), static_cast<int>(c)}, static_cast<DenoiserCode>(s));
  }
  return schedule;
}

} // namespace sdude
