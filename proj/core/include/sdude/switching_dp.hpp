#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sdude/channel.hpp"
#include "sdude/matrix.hpp"

namespace sdude {

// Per-position losses of an ordered subsequence: row i holds the loss of
// every single-symbol denoiser at position i.
using CostMatrix = Matrix;

CostMatrix estimated_costs(std::span<const Symbol> seq, const EstimatedLossTable& table);

struct SwitchingSolution {
  std::vector<DenoiserCode> assignment;
  double value = 0.0;  // total (unnormalized) cost of the assignment
  int switches = 0;
};

// Best single denoiser for the whole subsequence. Costs are summed in
// position order; ties go to the smallest code.
DenoiserCode best_fixed_denoiser(const CostMatrix& costs);

// Exact minimum of sum_i costs(i, s_i) over assignments with at most
// `budget` switches, by forward recursion on
//   F(i, j, s) = c(i, s) + min(F(i-1, j, s), min_{s' != s} F(i-1, j-1, s'))
// with F(0, j, s) = c(0, s), followed by backtracking. Ties prefer staying
// with the current denoiser, then the smallest code. Throws on budget < 0.
SwitchingSolution best_switching(const CostMatrix& costs, int budget);

int count_switches(std::span<const DenoiserCode> assignment);

// DUDE rule for one context group: argmin_s sum_tau ℓ(z_tau, s).
DenoiserCode dude_per_context(std::span<const Symbol> group, const EstimatedLossTable& table);

// S-DUDE rule for one context subsequence with budget min(m, n).
SwitchingSolution sdude_dp(std::span<const Symbol> seq, const EstimatedLossTable& table, int m);

// Forward and backward value tables of the two-pass formulation. Both use
// "at most j switches" semantics, so entries are non-increasing in j.
class DPState {
public:
  DPState(const CostMatrix& costs, int budget);

  int budget() const { return budget_; }
  std::size_t positions() const { return positions_; }
  std::size_t denoisers() const { return denoisers_; }

  double forward(std::size_t i, int j, std::size_t s) const { return fwd_[slot(i, j, s)]; }
  double backward(std::size_t i, int j, std::size_t s) const { return bwd_[slot(i, j, s)]; }

  // Best total over all feasible assignments that use s at position i.
  double through(std::size_t i, std::size_t s) const;
  // Best total over all feasible assignments; equals through(i, .) minimized
  // over s, for every i.
  double optimum() const;

private:
  std::size_t slot(std::size_t i, int j, std::size_t s) const {
    return (i * (static_cast<std::size_t>(budget_) + 1) + static_cast<std::size_t>(j)) * denoisers_ + s;
  }

  CostMatrix costs_;
  int budget_;
  std::size_t positions_;
  std::size_t denoisers_;
  std::vector<double> fwd_;
  std::vector<double> bwd_;
};

} // namespace sdude
