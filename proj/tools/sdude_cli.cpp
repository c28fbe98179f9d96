// Command-line front end: corrupt, denoise, ber, oracle, bench.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "sdude/channel_sim.hpp"
#include "sdude/denoise.hpp"
#include "sdude/experiment.hpp"
#include "sdude/netpbm.hpp"
#include "sdude/oracle.hpp"
#include "sdude/text_matrix.hpp"

namespace {

int exit_code(const sdude::Error& e) {
  const std::string kind = e.kind();
  if (kind == "IoError") return 3;
  if (kind == "FormatError") return 4;
  if (kind == "ChannelError") return 5;
  if (kind == "DomainError") return 6;
  return 1;
}

sdude::Image::Format format_for(const sdude::Grid& g) {
  return g.alphabet().size <= 2 ? sdude::Image::Format::Pbm : sdude::Image::Format::Pgm;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional shifting discrete universal denoiser"};
  app.require_subcommand(1);

  std::string in_path, out_path, channel_spec = "bsc:0.1", loss_spec = "hamming", schedule_path;
  std::uint64_t seed = 1;
  int k = 0, m = 0, max_depth = -1;
  std::string mode_name = "sdude-2d";

  auto* corrupt_cmd = app.add_subcommand("corrupt", "Pass an image through a discrete memoryless channel");
  corrupt_cmd->add_option("--in", in_path, "Clean PBM/PGM")->required();
  corrupt_cmd->add_option("--channel", channel_spec, "bsc:<delta> or matrix file");
  corrupt_cmd->add_option("--seed", seed, "Seed of the counter-based noise stream");
  corrupt_cmd->add_option("--out", out_path, "Noisy output")->required();

  auto* denoise_cmd = app.add_subcommand("denoise", "Denoise an image");
  denoise_cmd->add_option("--in", in_path, "Noisy PBM/PGM")->required();
  denoise_cmd->add_option("--channel", channel_spec, "bsc:<delta> or matrix file");
  denoise_cmd->add_option("--loss", loss_spec, "hamming or matrix file");
  denoise_cmd->add_option("--k", k, "Context order")->check(CLI::NonNegativeNumber);
  denoise_cmd->add_option("--m", m, "Switch budget per context")->check(CLI::NonNegativeNumber);
  denoise_cmd->add_option("--mode", mode_name, "dude-1d-raster | sdude-1d-raster | dude-2d | sdude-2d");
  denoise_cmd->add_option("--out", out_path, "Denoised output")->required();
  denoise_cmd->add_option("--schedule", schedule_path, "Write the schedule as CSV");

  std::string clean_path, test_path;
  int interior_k = -1;
  auto* ber_cmd = app.add_subcommand("ber", "Bit error rate between two images");
  ber_cmd->add_option("--clean", clean_path)->required();
  ber_cmd->add_option("--test", test_path)->required();
  ber_cmd->add_option("--interior", interior_k, "Restrict to the interior of a k-th order context")
      ->check(CLI::NonNegativeNumber);

  std::string noisy_path, target_name = "dphkm", report_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "Genie-aided performance targets");
  oracle_cmd->add_option("--clean", clean_path)->required();
  oracle_cmd->add_option("--noisy", noisy_path)->required();
  oracle_cmd->add_option("--target", target_name, "d2d0m | dphkm | dk | d2dkm");
  oracle_cmd->add_option("--k", k)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--m", m)->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--max-depth", max_depth, "Quadtree depth limit (default log2 N)");
  oracle_cmd->add_option("--loss", loss_spec, "hamming or matrix file");
  oracle_cmd->add_option("--report", report_path, "Write the full report (with witness) here");

  std::string config_path;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment sweep");
  bench_cmd->add_option("--config", config_path, "key = value experiment description")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*corrupt_cmd) {
      const auto clean = sdude::read_netpbm_file(in_path).to_grid();
      const auto channel = sdude::parse_channel_spec(channel_spec);
      sdude::require_valid_channel(channel);
      const auto noisy = sdude::corrupt(clean, channel, seed);
      sdude::write_netpbm_file(out_path, sdude::Image::from_grid(noisy, format_for(noisy)));
    } else if (*denoise_cmd) {
      const auto noisy = sdude::read_netpbm_file(in_path).to_grid();
      const auto channel = sdude::parse_channel_spec(channel_spec);
      const auto loss = sdude::parse_loss_spec(loss_spec, channel.clean_alphabet().size);
      const sdude::DenoiseConfig config{k, m, sdude::parse_mode(mode_name)};
      const auto result = sdude::denoise(noisy, config, channel, loss);
      sdude::write_netpbm_file(out_path,
                               sdude::Image::from_grid(result.reconstructed, format_for(result.reconstructed)));
      if (!schedule_path.empty()) {
        std::ofstream out(schedule_path);
        if (!out) throw sdude::IoError("cannot open '" + schedule_path + "' for writing");
        sdude::write_schedule_csv(out, result.schedule);
      }
      std::cout << "estimated_loss " << std::setprecision(9) << result.estimated_loss << '\n';
    } else if (*ber_cmd) {
      const auto clean = sdude::read_netpbm_file(clean_path).to_grid();
      const auto test = sdude::read_netpbm_file(test_path).to_grid();
      if (clean.rows() != test.rows() || clean.cols() != test.cols())
        throw sdude::DomainError("images differ in size");
      const auto region = interior_k >= 0 ? sdude::interior_region(clean, sdude::context_margin(interior_k))
                                          : sdude::data_region(clean);
      std::cout << std::setprecision(9) << sdude::ber(clean, test, region) << '\n';
    } else if (*oracle_cmd) {
      const auto clean = sdude::read_netpbm_file(clean_path).to_grid();
      const auto noisy = sdude::read_netpbm_file(noisy_path).to_grid();
      const auto loss = sdude::parse_loss_spec(loss_spec, std::max(2, clean.alphabet().size));
      const auto target = sdude::parse_genie_target(target_name);
      const int depth = max_depth < 0 ? clean.log2_side() : max_depth;
      sdude::GenieReport report;
      switch (target) {
      case sdude::GenieTarget::Dk: report = sdude::genie_fixed(clean, noisy, k, loss); break;
      case sdude::GenieTarget::DphKm: report = sdude::bruteforce_ph_class(clean, noisy, k, m, loss); break;
      case sdude::GenieTarget::D2d0m: report = sdude::bruteforce_qt_class(clean, noisy, 0, m, depth, loss); break;
      case sdude::GenieTarget::D2dKm: report = sdude::bruteforce_qt_class(clean, noisy, k, m, depth, loss); break;
      }
      std::cout << sdude::to_string(report.target) << ' ' << std::setprecision(9) << report.value << '\n';
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw sdude::IoError("cannot open '" + report_path + "' for writing");
        sdude::write_genie_report(out, report);
      }
    } else if (*bench_cmd) {
      const auto config = sdude::ExperimentConfig::parse_file(config_path);
      const auto report = sdude::run_experiment(config);
      if (config.csv.empty()) {
        report.write_csv(std::cout);
      } else {
        std::ofstream out(config.csv);
        if (!out) throw sdude::IoError("cannot open '" + config.csv + "' for writing");
        report.write_csv(out);
      }
      if (!config.timing_csv.empty()) {
        std::ofstream out(config.timing_csv);
        if (!out) throw sdude::IoError("cannot open '" + config.timing_csv + "' for writing");
        report.write_timing_csv(out);
      }
    }
  } catch (const sdude::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
