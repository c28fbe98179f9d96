#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "sdude/channel.hpp"
#include "sdude/grid.hpp"
#include "sdude/quadtree.hpp"

namespace sdude {

// Genie-aided performance targets. All of them see the clean grid and use
// the true loss Λ(x_t, s(z_t)) in place of the estimated loss.
enum class GenieTarget {
  Dk,     // best fixed k-th order 2-D sliding-window denoiser
  DphKm,  // best assignment with <= m switches per context along the PH scan
  D2d0m,  // best single-symbol denoisers constant on the leaves of a quadtree with m leaves
  D2dKm,  // same, per 2-D context
};

std::string_view to_string(GenieTarget target);
GenieTarget parse_genie_target(std::string_view text);

struct GenieReport {
  GenieTarget target = GenieTarget::Dk;
  int k = 0;
  int m = 0;
  double value = 0.0;  // normalized true loss over the witness' covered cells
  SwitchingSchedule witness{1};
  std::optional<QuadTree> quadtree;
};

GenieReport genie_fixed(const Grid& clean, const Grid& noisy, int k, const LossFunction& loss);

// Exact class minimum, computed with the switching DP on true losses.
GenieReport bruteforce_ph_class(const Grid& clean, const Grid& noisy, int k, int m,
                                const LossFunction& loss);

// Exhaustive search over quadtrees with m leaves and depth <= max_depth
// (clamped to log2 N). k = 0 gives D2d0m, k > 0 gives D2dKm. Ties keep the
// first tree in enumeration order.
GenieReport bruteforce_qt_class(const Grid& clean, const Grid& noisy, int k, int m, int max_depth,
                                const LossFunction& loss);

// Recomputes a report's value from its witness with cumulative_true_loss.
double reevaluate(const GenieReport& report, const Grid& clean, const Grid& noisy,
                  const LossFunction& loss);

// Versioned plain-text format: header lines followed by the witness CSV.
void write_genie_report(std::ostream& out, const GenieReport& report);
GenieReport read_genie_report(std::istream& in);

// h(x) = -x ln x - (1-x) ln(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

enum class BoundOrder { Zeroth, Kth };

struct BoundParams {
  double epsilon = 0.0;
  double n = 1.0;  // n for the zeroth-order bound, n_k (interior size) for the k-th order one
  double m = 0.0;
  int k = 0;
  int noisy_size = 2;
  int recon_size = 2;
  double L_max = 1.0;
};

// Zeroth order: 2 exp(-n [ε²/(2 L²) - 2 {h(m/n) + (m+1) ln|S| / n}]).
// k-th order:   2 (k̃+1)² exp(-n_k [(ε/L)² / (2 (k̃+1)²)
//                               - 2 |Z|^{2k} {h(m/n_k) + (m+1) ln|S| / n_k}]),
// with |S| = |X̂|^|Z| and k̃ = ceil(k/4). Values above 1 are returned as-is.
double theorem_bound(const BoundParams& params, BoundOrder order);

} // namespace sdude
