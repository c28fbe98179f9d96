#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sdude/switching_dp.hpp"

using namespace sdude;

static CostMatrix to_matrix(const std::vector<std::vector<double>>& c) {
  CostMatrix m(c.size(), c[0].size());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t s = 0; s < c[i].size(); ++s) m(i, s) = c[i][s];
  return m;
}

static double total(const CostMatrix& c, const std::vector<DenoiserCode>& a) {
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v += c(i, a[i]);
  return v;
}

TEST_CASE("switching DP equals exhaustive enumeration on 200 random instances") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(1, 9);
  std::uniform_int_distribution<int> dens(2, 4);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    const int ns = dens(rng);
    std::vector<std::vector<double>> c(n, std::vector<double>(ns));
    for (auto& row : c)
      for (auto& v : row) v = u(rng);
    const CostMatrix cm = to_matrix(c);
    for (int budget = 0; budget <= 4; ++budget) {
      const double expect = oracle::enumerate_switching(c, budget);
      const auto sol = best_switching(cm, budget);
      REQUIRE(sol.assignment.size() == static_cast<std::size_t>(n));
      CHECK(sol.value == doctest::Approx(expect).epsilon(1e-12));
      CHECK(total(cm, sol.assignment) == doctest::Approx(sol.value).epsilon(1e-12));
      CHECK(sol.switches == count_switches(sol.assignment));
      CHECK(sol.switches <= budget);

      const DPState state(cm, budget);
      CHECK(state.optimum() == doctest::Approx(expect).epsilon(1e-12));
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        double best = 1e300;
        for (std::size_t s = 0; s < static_cast<std::size_t>(ns); ++s) best = std::min(best, state.through(i, s));
        CHECK(best == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("through(i, s) equals the constrained enumeration") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> c(6, std::vector<double>(3));
    for (auto& row : c)
      for (auto& v : row) v = u(rng);
    const DPState state(to_matrix(c), 2);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t s = 0; s < 3; ++s) {
        // Force s at position i by making every other choice prohibitive.
        auto forced = c;
        for (std::size_t o = 0; o < 3; ++o)
          if (o != s) forced[i][o] = 1e6;
        CHECK(state.through(i, s) == doctest::Approx(oracle::enumerate_switching(forced, 2)).epsilon(1e-12));
      }
  }
}

TEST_CASE("budget zero is the best fixed denoiser") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    CostMatrix c(10, 4);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t s = 0; s < 4; ++s) c(i, s) = u(rng);
    const auto sol = best_switching(c, 0);
    const DenoiserCode fixed = best_fixed_denoiser(c);
    for (DenoiserCode s : sol.assignment) CHECK(s == fixed);
    CHECK(sol.switches == 0);
  }
}

TEST_CASE("unlimited budget picks the per-position minimum") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostMatrix c(12, 4);
  double expect = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    double best = 1e300;
    for (std::size_t s = 0; s < 4; ++s) best = std::min(best, c(i, s) = u(rng));
    expect += best;
  }
  CHECK(best_switching(c, 11).value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(best_switching(c, 1000).value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("optimum is non-increasing in the budget") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CostMatrix c(40, 4);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t s = 0; s < 4; ++s) c(i, s) = u(rng);
  double prev = 1e300;
  for (int m = 0; m <= 40; ++m) {
    const double v = best_switching(c, m).value;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("ties prefer staying, then the smallest code") {
  CostMatrix flat(5, 4, 0.25);
  const auto sol = best_switching(flat, 3);
  for (DenoiserCode s : sol.assignment) CHECK(s == 0);
  CHECK(sol.switches == 0);
  CHECK(best_fixed_denoiser(flat) == 0);
}

TEST_CASE("per-context rules on the BSC") {
  const auto table = build_estimated_loss(ChannelModel::bsc(0.1), LossFunction::hamming(2));
  // Mostly ones: the best fixed rule is "always 1" or "identity"; with
  // ℓ(0, always-1) = 1.125 and ℓ(1, always-1) = -0.125 the constant wins.
  const std::vector<Symbol> ones{1, 1, 1, 0, 1, 1, 1, 1};
  CHECK(dude_per_context(ones, table) == 3);
  const auto sol = sdude_dp(ones, table, 0);
  for (DenoiserCode s : sol.assignment) CHECK(s == 3);

  const std::vector<Symbol> two_runs{0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1};
  const auto split = sdude_dp(two_runs, table, 1);
  CHECK(split.switches == 1);
  CHECK(split.assignment.front() == 0);
  CHECK(split.assignment.back() == 3);
  CHECK_THROWS_AS(best_switching(CostMatrix(3, 2), -1), DomainError);
  CHECK(estimated_costs(two_runs, table)(6, 3) == doctest::Approx(-0.125));
}
