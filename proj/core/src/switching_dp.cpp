#include "sdude/switching_dp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace sdude {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest and second-smallest entries of a row, ties to the smaller index.
struct RowBest {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  double first_value = kInf;
  double second_value = kInf;
};

RowBest row_best(const double* row, std::size_t count) {
  RowBest b;
  for (std::size_t s = 0; s < count; ++s) {
    const double v = row[s];
    if (v < b.first_value) {
      b.second = b.first;
      b.second_value = b.first_value;
      b.first = static_cast<std::uint32_t>(s);
      b.first_value = v;
    } else if (v < b.second_value) {
      b.second = static_cast<std::uint32_t>(s);
      b.second_value = v;
    }
  }
  return b;
}

int effective_budget(int budget, std::size_t positions) {
  if (budget < 0) throw DomainError("switch budget must be non-negative");
  // More than n-1 switches cannot be used.
  const auto cap = positions == 0 ? 0 : static_cast<long long>(positions) - 1;
  return static_cast<int>(std::min<long long>(budget, cap));
}

} // namespace

CostMatrix estimated_costs(std::span<const Symbol> seq, const EstimatedLossTable& table) {
  const std::size_t ns = table.space().size();
  CostMatrix costs(seq.size(), ns);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] >= table.space().noisy_alphabet().size)
      throw DomainError("noisy symbol outside the channel output alphabet");
    auto row = table.row(seq[i]);
    std::copy(row.begin(), row.end(), &costs(i, 0));
  }
  return costs;
}

DenoiserCode best_fixed_denoiser(const CostMatrix& costs) {
  if (costs.rows() == 0) throw DomainError("empty context group");
  std::vector<double> totals(costs.cols(), 0.0);
  for (std::size_t i = 0; i < costs.rows(); ++i) {
    auto row = costs.row(i);
    for (std::size_t s = 0; s < totals.size(); ++s) totals[s] += row[s];
  }
  return static_cast<DenoiserCode>(row_best(totals.data(), totals.size()).first);
}

SwitchingSolution best_switching(const CostMatrix& costs, int budget) {
  const std::size_t n = costs.rows();
  const std::size_t ns = costs.cols();
  if (n == 0) throw DomainError("empty subsequence");
  const int m = effective_budget(budget, n);
  const std::size_t rows = static_cast<std::size_t>(m) + 1;

  std::vector<double> prev(rows * ns);
  std::vector<double> cur(rows * ns);
  // switched[i][j][s]: F(i, j, s) came from a switch.
  std::vector<std::uint8_t> switched(n * rows * ns, 0);
  // Row minima of F(i-1, j, .), needed to recover the switch source.
  std::vector<RowBest> best(n * rows);

  for (std::size_t j = 0; j < rows; ++j) {
    auto c = costs.row(0);
    std::copy(c.begin(), c.end(), prev.begin() + j * ns);
    best[j] = row_best(&prev[j * ns], ns);
  }

  for (std::size_t i = 1; i < n; ++i) {
    auto c = costs.row(i);
    for (std::size_t j = 0; j < rows; ++j) {
      const double* stay_row = &prev[j * ns];
      double* out = &cur[j * ns];
      std::uint8_t* flag = &switched[(i * rows + j) * ns];
      if (j == 0) {
        for (std::size_t s = 0; s < ns; ++s) out[s] = c[s] + stay_row[s];
        continue;
      }
      const RowBest& from = best[(i - 1) * rows + (j - 1)];
      for (std::size_t s = 0; s < ns; ++s) {
        const double sw = (from.first != s) ? from.first_value : from.second_value;
        if (sw < stay_row[s]) {
          out[s] = c[s] + sw;
          flag[s] = 1;
        } else {
          out[s] = c[s] + stay_row[s];
        }
      }
    }
    for (std::size_t j = 0; j < rows; ++j) best[i * rows + j] = row_best(&cur[j * ns], ns);
    std::swap(prev, cur);
  }

  SwitchingSolution sol;
  sol.assignment.resize(n);
  const RowBest& last = best[(n - 1) * rows + static_cast<std::size_t>(m)];
  sol.value = last.first_value;
  std::size_t s = last.first;
  std::size_t j = static_cast<std::size_t>(m);
  for (std::size_t i = n; i-- > 0;) {
    sol.assignment[i] = static_cast<DenoiserCode>(s);
    if (i > 0 && switched[(i * rows + j) * ns + s]) {
      const RowBest& from = best[(i - 1) * rows + (j - 1)];
      s = (from.first != s) ? from.first : from.second;
      --j;
      ++sol.switches;
    }
  }
  return sol;
}

int count_switches(std::span<const DenoiserCode> assignment) {
  int n = 0;
  for (std::size_t i = 1; i < assignment.size(); ++i) n += assignment[i] != assignment[i - 1];
  return n;
}

DenoiserCode dude_per_context(std::span<const Symbol> group, const EstimatedLossTable& table) {
  return best_fixed_denoiser(estimated_costs(group, table));
}

SwitchingSolution sdude_dp(std::span<const Symbol> seq, const EstimatedLossTable& table, int m) {
  if (m < 0) throw DomainError("switch budget must be non-negative");
  return best_switching(estimated_costs(seq, table), m);
}

DPState::DPState(const CostMatrix& costs, int budget)
    : costs_(costs), positions_(costs.rows()), denoisers_(costs.cols()) {
  if (positions_ == 0) throw DomainError("empty subsequence");
  budget_ = effective_budget(budget, positions_);
  const std::size_t rows = static_cast<std::size_t>(budget_) + 1;
  fwd_.assign(positions_ * rows * denoisers_, 0.0);
  bwd_.assign(positions_ * rows * denoisers_, 0.0);

  auto fill = [&](std::vector<double>& t, std::size_t i, std::size_t from) {
    auto c = costs.row(i);
    for (int j = 0; j <= budget_; ++j) {
      double* out = &t[slot(i, j, 0)];
      if (from == positions_) {
        std::copy(c.begin(), c.end(), out);
        continue;
      }
      const double* stay = &t[slot(from, j, 0)];
      RowBest b;
      if (j > 0) b = row_best(&t[slot(from, j - 1, 0)], denoisers_);
      for (std::size_t s = 0; s < denoisers_; ++s) {
        double v = stay[s];
        if (j > 0) v = std::min(v, b.first != s ? b.first_value : b.second_value);
        out[s] = c[s] + v;
      }
    }
  };
  for (std::size_t i = 0; i < positions_; ++i) fill(fwd_, i, i == 0 ? positions_ : i - 1);
  for (std::size_t i = positions_; i-- > 0;) fill(bwd_, i, i + 1 == positions_ ? positions_ : i + 1);
}

double DPState::through(std::size_t i, std::size_t s) const {
  double best_value = kInf;
  for (int j = 0; j <= budget_; ++j)
    best_value = std::min(best_value, forward(i, j, s) + backward(i, budget_ - j, s) - costs_(i, s));
  return best_value;
}

double DPState::optimum() const {
  double v = kInf;
  for (std::size_t s = 0; s < denoisers_; ++s) v = std::min(v, forward(positions_ - 1, budget_, s));
  return v;
}

} // namespace sdude
