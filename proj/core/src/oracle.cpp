#include "sdude/oracle.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "sdude/denoise.hpp"
#include "sdude/geometry.hpp"
#include "sdude/switching_dp.hpp"

namespace sdude {

std::string_view to_string(GenieTarget target) {
  switch (target) {
  case GenieTarget::Dk: return "dk";
  case GenieTarget::DphKm: return "dphkm";
  case GenieTarget::D2d0m: return "d2d0m";
  case GenieTarget::D2dKm: return "d2dkm";
  }
  return "unknown";
}

GenieTarget parse_genie_target(std::string_view text) {
  for (GenieTarget t : {GenieTarget::Dk, GenieTarget::DphKm, GenieTarget::D2d0m, GenieTarget::D2dKm})
    if (text == to_string(t)) return t;
  throw DomainError("unknown genie target '" + std::string(text) + "'");
}

namespace {

void check_pair(const Grid& clean, const Grid& noisy, const LossFunction& loss) {
  if (clean.side() != noisy.side()) throw DomainError("clean and noisy grids differ in size");
  if (clean.alphabet().size > loss.clean_alphabet().size)
    throw DomainError("clean alphabet exceeds the loss function's alphabet");
}

CostMatrix true_costs(const Grid& clean, const Grid& noisy, std::span<const Coord> cells,
                      const DenoiserSpace& space, const LossFunction& loss) {
  CostMatrix costs(cells.size(), space.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Coord t = cells[i];
    for (std::size_t s = 0; s < space.size(); ++s)
      costs(i, s) = loss(clean[t], space.apply(static_cast<DenoiserCode>(s), noisy[t]));
  }
  return costs;
}

GenieReport finish(GenieReport report, const Grid& clean, const Grid& noisy, const LossFunction& loss) {
  report.value = reevaluate(report, clean, noisy, loss);
  return report;
}

} // namespace

GenieReport genie_fixed(const Grid& clean, const Grid& noisy, int k, const LossFunction& loss) {
  check_pair(clean, noisy, loss);
  DenoiserSpace space(noisy.alphabet(), loss.recon_alphabet());
  const ContextGroups groups = group_by_context_2d(noisy, k);
  GenieReport report{GenieTarget::Dk, k, 0, 0.0, SwitchingSchedule(noisy.side()), std::nullopt};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto cells = groups.group(g);
    const DenoiserCode s = best_fixed_denoiser(true_costs(clean, noisy, cells, space, loss));
    for (Coord t : cells) report.witness.assign(t, s);
  }
  return finish(std::move(report), clean, noisy, loss);
}

GenieReport bruteforce_ph_class(const Grid& clean, const Grid& noisy, int k, int m,
                                const LossFunction& loss) {
  check_pair(clean, noisy, loss);
  if (m < 0) throw DomainError("switch budget must be non-negative");
  DenoiserSpace space(noisy.alphabet(), loss.recon_alphabet());
  const ContextGroups groups = group_by_context_2d(noisy, k);
  GenieReport report{GenieTarget::DphKm, k, m, 0.0, SwitchingSchedule(noisy.side()), std::nullopt};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto cells = groups.group(g);
    const SwitchingSolution sol = best_switching(true_costs(clean, noisy, cells, space, loss), m);
    for (std::size_t i = 0; i < cells.size(); ++i) report.witness.assign(cells[i], sol.assignment[i]);
  }
  return finish(std::move(report), clean, noisy, loss);
}

GenieReport bruteforce_qt_class(const Grid& clean, const Grid& noisy, int k, int m, int max_depth,
                                const LossFunction& loss) {
  check_pair(clean, noisy, loss);
  if (m < 1 || (m - 1) % 3 != 0) throw DomainError("quadtree leaf count must have the form 3j+1");
  DenoiserSpace space(noisy.alphabet(), loss.recon_alphabet());
  const std::size_t ns = space.size();
  const ContextGroups groups = group_by_context_2d(noisy, k);
  const CostMatrix costs = true_costs(clean, noisy, groups.cells, space, loss);
  const auto trees = quadtree_enumerate(m, max_depth, noisy.log2_side());
  if (trees.empty()) throw DomainError("no quadtree with the requested leaves fits the depth limit");

  double best_total = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> best_tree;
  std::vector<double> totals(static_cast<std::size_t>(m + 1) * ns);
  std::vector<std::uint8_t> touched(static_cast<std::size_t>(m + 1));

  auto per_label_choice = [&](const RegionMap& labels, std::size_t g, auto&& emit) {
    std::fill(totals.begin(), totals.end(), 0.0);
    std::fill(touched.begin(), touched.end(), 0);
    const std::size_t base = groups.offsets[g];
    auto cells = groups.group(g);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const int label = labels(cells[i]);
      touched[label] = 1;
      auto row = costs.row(base + i);
      for (std::size_t s = 0; s < ns; ++s) totals[label * ns + s] += row[s];
    }
    for (int label = 1; label <= m; ++label) {
      if (!touched[label]) continue;
      std::size_t arg = 0;
      for (std::size_t s = 1; s < ns; ++s)
        if (totals[label * ns + s] < totals[label * ns + arg]) arg = s;
      emit(label, static_cast<DenoiserCode>(arg), totals[label * ns + arg]);
    }
  };

  for (std::size_t q = 0; q < trees.size(); ++q) {
    const RegionMap labels = region_map(trees[q]);
    double total = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g)
      per_label_choice(labels, g, [&](int, DenoiserCode, double v) { total += v; });
    if (total < best_total) {
      best_total = total;
      best_tree = q;
    }
  }

  const QuadTree& tree = trees[*best_tree];
  const RegionMap labels = region_map(tree);
  GenieReport report{k == 0 ? GenieTarget::D2d0m : GenieTarget::D2dKm, k, m, 0.0,
                     SwitchingSchedule(noisy.side()), tree};
  std::vector<DenoiserCode> choice(static_cast<std::size_t>(m + 1));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    per_label_choice(labels, g, [&](int label, DenoiserCode s, double) { choice[label] = s; });
    for (Coord t : groups.group(g)) report.witness.assign(t, choice[labels(t)]);
  }
  return finish(std::move(report), clean, noisy, loss);
}

double reevaluate(const GenieReport& report, const Grid& clean, const Grid& noisy, const LossFunction& loss) {
  const auto region = report.witness.covered();
  return cumulative_true_loss(clean, noisy, report.witness, loss, region);
}

namespace {
constexpr std::string_view kReportMagic = "sdude-genie";
constexpr int kReportVersion = 1;
} // namespace

void write_genie_report(std::ostream& out, const GenieReport& report) {
  std::ostringstream value;
  value.precision(std::numeric_limits<double>::max_digits10);
  value << report.value;
  out << kReportMagic << ' ' << kReportVersion << '\n'
      << "target " << to_string(report.target) << '\n'
      << "k " << report.k << '\n'
      << "m " << report.m << '\n'
      << "value " << value.str() << '\n'
      << "side " << report.witness.side() << '\n';
  if (report.quadtree)
    out << "quadtree " << report.quadtree->log2_side() << ' ' << report.quadtree->preorder() << '\n';
  else
    out << "quadtree -\n";
  write_schedule_csv(out, report.witness);
}

GenieReport read_genie_report(std::istream& in) {
  auto expect = [&](std::string_view key) {
    std::string word;
    if (!(in >> word) || word != key)
      throw FormatError("genie report: expected '" + std::string(key) + "'");
  };
  expect(kReportMagic);
  int version = 0;
  if (!(in >> version) || version != kReportVersion) throw FormatError("genie report: unsupported version");

  GenieReport report;
  std::string word;
  expect("target");
  in >> word;
  report.target = parse_genie_target(word);
  expect("k");
  in >> report.k;
  expect("m");
  in >> report.m;
  expect("value");
  in >> report.value;
  expect("side");
  int side = 0;
  in >> side;
  expect("quadtree");
  in >> word;
  if (!in) throw FormatError("genie report: truncated header");
  if (word != "-") {
    std::string pre;
    in >> pre;
    report.quadtree = QuadTree(std::stoi(word), pre);
  }
  in >> std::ws;
  report.witness = read_schedule_csv(in, side);
  return report;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw DomainError("binary entropy argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

double theorem_bound(const BoundParams& p, BoundOrder order) {
  if (!(p.n > 0.0)) throw DomainError("bound needs a positive sample count");
  if (p.m < 0.0 || p.m > p.n) throw DomainError("bound needs 0 <= m/n <= 1");
  if (p.noisy_size < 1 || p.recon_size < 1) throw DomainError("alphabet sizes must be positive");
  if (!(p.L_max > 0.0)) throw DomainError("L_max must be positive");
  if (p.k < 0) throw DomainError("context order must be non-negative");

  const double log_s = p.noisy_size * std::log(static_cast<double>(p.recon_size));
  const double complexity = binary_entropy(p.m / p.n) + (p.m + 1.0) * log_s / p.n;
  if (order == BoundOrder::Zeroth) {
    const double rate = p.epsilon * p.epsilon / (2.0 * p.L_max * p.L_max) - 2.0 * complexity;
    return 2.0 * std::exp(-p.n * rate);
  }
  const double kt1 = context_margin(p.k) + 1.0;
  const double contexts = std::pow(static_cast<double>(p.noisy_size), 2.0 * p.k);
  const double ratio = p.epsilon / p.L_max;
  const double rate = ratio * ratio / (2.0 * kt1 * kt1) - 2.0 * contexts * complexity;
  return 2.0 * kt1 * kt1 * std::exp(-p.n * rate);
}

} // namespace sdude
