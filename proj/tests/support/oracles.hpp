// Independent reference computations for tests. Nothing here calls into the
// code paths it is used to check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "sdude/grid.hpp"
#include "sdude/matrix.hpp"

namespace oracle {

// Minimum of sum_i cost[i][s_i] over every assignment with at most `budget`
// switches, by depth-first enumeration.
inline double enumerate_switching(const std::vector<std::vector<double>>& cost, int budget,
                                  std::vector<int>* best_assignment = nullptr) {
  const std::size_t n = cost.size();
  const int ns = static_cast<int>(cost[0].size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> cur(n);
  std::function<void(std::size_t, int, double)> dfs = [&](std::size_t i, int used, double acc) {
    if (i == n) {
      if (acc < best) {
        best = acc;
        if (best_assignment) *best_assignment = cur;
      }
      return;
    }
    for (int s = 0; s < ns; ++s) {
      const bool sw = i > 0 && s != cur[i - 1];
      if (sw && used == budget) continue;
      cur[i] = s;
      dfs(i + 1, used + sw, acc + cost[i][s]);
    }
  };
  dfs(0, 0, 0.0);
  return best;
}

// Cramer's rule for a 2x2 system A x = b.
inline std::array<double, 2> solve2(double a, double b, double c, double d, double r0, double r1) {
  const double det = a * d - b * c;
  return {(r0 * d - b * r1) / det, (a * r1 - c * r0) / det};
}

// Gaussian elimination with partial pivoting on a small dense system.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

inline sdude::Grid random_grid(std::mt19937_64& rng, int side, int alphabet = 2) {
  sdude::Grid g(side, sdude::Alphabet{alphabet});
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) g.set({r, c}, static_cast<sdude::Symbol>(sym(rng)));
  return g;
}

// Flip each cell of a binary grid with probability p.
inline sdude::Grid flip(std::mt19937_64& rng, const sdude::Grid& g, double p) {
  sdude::Grid out = g;
  std::bernoulli_distribution coin(p);
  for (int r = 0; r < g.side(); ++r)
    for (int c = 0; c < g.side(); ++c)
      if (coin(rng)) out.set({r, c}, static_cast<sdude::Symbol>(1 - g[{r, c}]));
  return out;
}

// Output of denoiser code s on noisy symbol z, decoded by hand.
inline int apply_code(std::uint32_t s, int z, int recon) {
  for (int i = 0; i < z; ++i) s /= static_cast<std::uint32_t>(recon);
  return static_cast<int>(s % static_cast<std::uint32_t>(recon));
}

} // namespace oracle
