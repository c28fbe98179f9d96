#include "sdude/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdude/channel_sim.hpp"
#include "sdude/netpbm.hpp"
#include "sdude/oracle.hpp"
#include "sdude/text_matrix.hpp"

namespace sdude {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\"'[");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"']");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

long long to_integer(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw FormatError("config key '" + key + "': expected an integer, got '" + text + "'");
}

template <class T>
std::vector<T> integer_list(const std::string& value, const std::string& key) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) {
    long long v = to_integer(item, key);
    if (v < 0) throw FormatError("config key '" + key + "' must be non-negative");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw FormatError("config key '" + key + "' is empty");
  return out;
}

std::string fmt9(double v) {
  std::ostringstream s;
  s << std::setprecision(9) << v;
  return s.str();
}

} // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = line.substr(eq + 1);
    const std::string value = trim(raw);

    if (key == "image") cfg.image = value;
    else if (key == "side") cfg.side = static_cast<int>(to_integer(value, key));
    else if (key == "quadrants") {
      auto items = split_list(raw);
      if (items.size() != 4) throw FormatError("config key 'quadrants' needs exactly 4 recipes");
      for (int q = 0; q < 4; ++q) cfg.quadrants[q] = Recipe::parse(items[q]);
    } else if (key == "image_seed") cfg.image_seed = static_cast<std::uint64_t>(to_integer(value, key));
    else if (key == "channel") cfg.channel = value;
    else if (key == "loss") cfg.loss = value;
    else if (key == "seeds") cfg.seeds = integer_list<std::uint64_t>(raw, key);
    else if (key == "k") cfg.ks = integer_list<int>(raw, key);
    else if (key == "m") cfg.ms = integer_list<int>(raw, key);
    else if (key == "modes") {
      cfg.modes.clear();
      for (const auto& item : split_list(raw)) cfg.modes.push_back(parse_mode(item));
      if (cfg.modes.empty()) throw FormatError("config key 'modes' is empty");
    } else if (key == "oracle") {
      if (value != "true" && value != "false") throw FormatError("config key 'oracle' must be true or false");
      cfg.oracle = value == "true";
    } else if (key == "csv") cfg.csv = value;
    else if (key == "timing_csv") cfg.timing_csv = value;
    else if (key == "output_dir") cfg.output_dir = value;
    else throw FormatError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse(in);
}

double reconstruction_loss(const Grid& clean, const Grid& reconstructed, const LossFunction& loss,
                           std::span<const Coord> region) {
  if (region.empty()) throw DomainError("loss region is empty");
  if (clean.side() != reconstructed.side()) throw DomainError("grids differ in size");
  double total = 0.0;
  for (Coord t : region) {
    if (reconstructed[t] >= loss.recon_alphabet().size)
      throw DomainError("reconstructed symbol outside the loss alphabet");
    total += loss(clean[t], reconstructed[t]);
  }
  return total / static_cast<double>(region.size());
}

void MetricsReport::write_csv(std::ostream& out) const {
  out << "mode,k,m,seeds,ber_interior,ber_full,loss_interior,genie_dk,genie_dphkm,error\n";
  for (const auto& r : rows) {
    out << to_string(r.mode) << ',' << r.k << ',' << r.m << ',' << r.seeds << ',';
    if (r.error.empty())
      out << fmt9(r.ber_interior) << ',' << fmt9(r.ber_full) << ',' << fmt9(r.loss_interior);
    else
      out << ",,";
    out << ',' << (r.genie_dk ? fmt9(*r.genie_dk) : "") << ','
        << (r.genie_dphkm ? fmt9(*r.genie_dphkm) : "") << ',';
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << err << '\n';
  }
}

void MetricsReport::write_timing_csv(std::ostream& out) const {
  out << "mode,k,m,seeds,runtime_ms\n";
  for (const auto& r : rows)
    out << to_string(r.mode) << ',' << r.k << ',' << r.m << ',' << r.seeds << ',' << fmt9(r.runtime_ms) << '\n';
}

MetricsReport run_experiment(const ExperimentConfig& config) {
  const ChannelModel channel = parse_channel_spec(config.channel);
  require_valid_channel(channel);

  Grid clean = config.image == "synthetic"
                   ? synthesize_composite(config.side, config.quadrants, config.image_seed)
                   : read_netpbm_file(config.image).to_grid();
  const LossFunction loss = parse_loss_spec(config.loss, channel.clean_alphabet().size);
  const EstimatedLossTable table = build_estimated_loss(channel, loss);
  const Image::Format format = clean.alphabet().size <= 2 && channel.noisy_alphabet().size <= 2
                                   ? Image::Format::Pbm
                                   : Image::Format::Pgm;

  std::vector<Grid> noisy;
  for (std::uint64_t seed : config.seeds) noisy.push_back(corrupt(clean, channel, seed));

  const std::string ext = format == Image::Format::Pbm ? ".pbm" : ".pgm";
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    write_netpbm_file(config.output_dir + "/clean" + ext, Image::from_grid(clean, format));
    for (std::size_t i = 0; i < noisy.size(); ++i)
      write_netpbm_file(config.output_dir + "/noisy_s" + std::to_string(config.seeds[i]) + ext,
                        Image::from_grid(noisy[i], format));
  }

  const std::vector<Coord> full = data_region(clean);
  MetricsReport report;
  for (Mode mode : config.modes)
    for (int k : config.ks) {
      std::optional<MetricsRow> fixed_row;  // non-switching modes ignore m
      for (int m : config.ms) {
        if (fixed_row) {
          MetricsRow row = *fixed_row;
          row.m = m;
          row.genie_dphkm.reset();
          report.rows.push_back(row);
          continue;
        }
        MetricsRow row;
        row.mode = mode;
        row.k = k;
        row.m = m;
        try {
          const std::vector<Coord> interior = interior_region(clean, context_margin(k));
          if (interior.empty()) throw DomainError("context order too large for the grid: empty interior");
          double genie_dk = 0.0;
          double genie_ph = 0.0;
          for (std::size_t i = 0; i < noisy.size(); ++i) {
            const auto start = std::chrono::steady_clock::now();
            const DenoiseResult result = denoise(noisy[i], DenoiseConfig{k, m, mode}, table);
            const auto stop = std::chrono::steady_clock::now();
            row.runtime_ms += std::chrono::duration<double, std::milli>(stop - start).count();
            row.ber_interior += ber(clean, result.reconstructed, interior);
            row.ber_full += ber(clean, result.reconstructed, full);
            row.loss_interior += reconstruction_loss(clean, result.reconstructed, loss, interior);
            if (config.oracle) {
              genie_dk += genie_fixed(clean, noisy[i], k, loss).value;
              if (is_switching(mode)) genie_ph += bruteforce_ph_class(clean, noisy[i], k, m, loss).value;
            }
            if (!config.output_dir.empty()) {
              std::ostringstream name;
              name << config.output_dir << '/' << to_string(mode) << "_k" << k << "_m" << m << "_s"
                   << config.seeds[i] << ext;
              write_netpbm_file(name.str(), Image::from_grid(result.reconstructed, format));
            }
          }
          const double count = static_cast<double>(noisy.size());
          row.seeds = noisy.size();
          row.ber_interior /= count;
          row.ber_full /= count;
          row.loss_interior /= count;
          row.runtime_ms /= count;
          if (config.oracle) {
            row.genie_dk = genie_dk / count;
            if (is_switching(mode)) row.genie_dphkm = genie_ph / count;
          }
        } catch (const Error& e) {
          row = MetricsRow{mode, k, m, 0, 0.0, 0.0, 0.0, 0.0, std::nullopt, std::nullopt,
                           std::string(e.kind()) + ": " + e.what()};
        }
        if (!is_switching(mode)) fixed_row = row;
        report.rows.push_back(row);
      }
    }
  return report;
}

} // namespace sdude
