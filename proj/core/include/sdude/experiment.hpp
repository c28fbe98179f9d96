#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdude/denoise.hpp"
#include "sdude/synthetic.hpp"

namespace sdude {

// One sweep over modes x k x m, averaged over corruption seeds.
struct ExperimentConfig {
  std::string image = "synthetic";  // a PBM/PGM path, or "synthetic"
  int side = 64;                    // synthetic composites only
  std::array<Recipe, 4> quadrants = default_composite();
  std::uint64_t image_seed = 1;
  std::string channel = "bsc:0.1";
  std::string loss = "hamming";
  std::vector<std::uint64_t> seeds{1};
  std::vector<int> ks{1};
  std::vector<int> ms{0};
  std::vector<Mode> modes{Mode::Dude2d, Mode::Sdude2d};
  bool oracle = false;     // add genie targets D_k and D^PH_{k,m}
  std::string csv;         // BER grid; stdout when empty
  std::string timing_csv;  // wall-clock per row
  std::string output_dir;  // reconstructed images

  // "key = value" lines; '#' starts a comment; lists are comma separated and
  // may be wrapped in [ ]; string values may be quoted.
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);
};

struct MetricsRow {
  Mode mode = Mode::Dude2d;
  int k = 0;
  int m = 0;
  std::size_t seeds = 0;
  double ber_interior = 0.0;
  double ber_full = 0.0;
  double loss_interior = 0.0;  // normalized true loss of the reconstruction
  double runtime_ms = 0.0;
  std::optional<double> genie_dk;
  std::optional<double> genie_dphkm;
  std::string error;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;

  // Deterministic columns only, 9 significant digits.
  void write_csv(std::ostream& out) const;
  void write_timing_csv(std::ostream& out) const;
};

// (1/|region|) sum_t Λ(x_t, x̂_t).
double reconstruction_loss(const Grid& clean, const Grid& reconstructed, const LossFunction& loss,
                           std::span<const Coord> region);

MetricsReport run_experiment(const ExperimentConfig& config);

} // namespace sdude
