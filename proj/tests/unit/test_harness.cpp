#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sdude/channel_sim.hpp"
#include "sdude/experiment.hpp"
#include "sdude/geometry.hpp"
#include "sdude/netpbm.hpp"
#include "sdude/synthetic.hpp"
#include "sdude/text_matrix.hpp"

using namespace sdude;

TEST_CASE("corrupt: degenerate crossover probabilities") {
  std::mt19937_64 rng(1);
  const Grid clean = oracle::random_grid(rng, 32);
  CHECK(corrupt(clean, ChannelModel::bsc(0.0), 5) == clean);
  const Grid inv = corrupt(clean, ChannelModel::bsc(1.0), 5);
  for (std::size_t i = 0; i < clean.cell_count(); ++i) CHECK(inv.at(i) == 1 - clean.at(i));
}

TEST_CASE("corrupt: BSC(0.1) flip rate on 512x512") {
  const Grid zeros(512, Alphabet{2});
  const Grid noisy = corrupt(zeros, ChannelModel::bsc(0.1), 2024);
  double ones = 0.0;
  for (Symbol v : noisy.data()) ones += v;
  const double rate = ones / (512.0 * 512.0);
  CHECK(std::abs(rate - 0.1) <= 0.003);
  CHECK(corrupt(zeros, ChannelModel::bsc(0.1), 2024) == noisy);
  CHECK_FALSE(corrupt(zeros, ChannelModel::bsc(0.1), 2025) == noisy);
}

TEST_CASE("corrupt: empirical transitions within 4 sigma of the channel") {
  const Matrix pi{{0.7, 0.2, 0.1}, {0.1, 0.6, 0.3}, {0.25, 0.25, 0.5}};
  const ChannelModel ch(pi);
  std::vector<Symbol> payload(512 * 512);
  for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = static_cast<Symbol>(i % 3);
  const Grid clean = Grid::from_rows(512, 512, Alphabet{3}, payload);
  const Grid noisy = corrupt(clean, ch, 99);
  double counts[3][3] = {};
  double totals[3] = {};
  for (std::size_t i = 0; i < payload.size(); ++i) {
    counts[clean.at(i)][noisy.at(i)] += 1;
    totals[clean.at(i)] += 1;
  }
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) {
      const double p = pi(x, z);
      const double sigma = std::sqrt(p * (1 - p) / totals[x]);
      CHECK(std::abs(counts[x][z] / totals[x] - p) <= 4 * sigma);
    }
}

TEST_CASE("corrupt leaves padding untouched") {
  std::vector<Symbol> payload(5 * 6, 0);
  const Grid clean = Grid::from_rows(5, 6, Alphabet{2}, payload);
  const Grid noisy = corrupt(clean, ChannelModel::bsc(1.0), 1);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) CHECK(noisy[{r, c}] == (clean.is_padding({r, c}) ? 0 : 1));
}

TEST_CASE("counter rng draws depend only on the counter") {
  const CounterRng a(7, 3);
  const CounterRng b(7, 3);
  CHECK(a.bits(1000) == b.bits(1000));
  CHECK(a.bits(1) != a.bits(2));
  CHECK(a.bits(1) != CounterRng(7, 4).bits(1));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("synthetic composites") {
  const Recipe c0{Recipe::Kind::Constant, 0};
  const Recipe c1{Recipe::Kind::Constant, 1};
  const Grid same = synthesize_composite(16, {c1, c1, c1, c1}, 3);
  for (Symbol v : same.data()) CHECK(v == 1);

  const Grid board = synthesize_composite(4, {c0, c1, c0, c1}, 3);
  // UL=0, UR=1, LR=0, LL=1.
  const std::vector<Symbol> expect{0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 0};
  CHECK(std::vector<Symbol>(board.data().begin(), board.data().end()) == expect);

  // Pairwise distinct statistics between quadrants of the default composite,
  // using a chi-square test on (pixel, right neighbour, lower neighbour)
  // configurations.
  const Grid comp = synthesize_composite(512, default_composite(), 1);
  auto histogram = [&](int q) {
    const Coord origin[4] = {{0, 0}, {0, 256}, {256, 256}, {256, 0}};
    std::array<double, 8> h{};
    for (int r = 0; r < 255; ++r)
      for (int c = 0; c < 255; ++c) {
        const Coord t{origin[q].row + r, origin[q].col + c};
        h[comp[t] | comp[{t.row, t.col + 1}] << 1 | comp[{t.row + 1, t.col}] << 2] += 1;
      }
    return h;
  };
  std::array<std::array<double, 8>, 4> hs{histogram(0), histogram(1), histogram(2), histogram(3)};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      double chi2 = 0.0;
      for (int i = 0; i < 8; ++i) {
        const double total = hs[a][i] + hs[b][i];
        if (total == 0) continue;
        const double ea = total / 2;
        chi2 += (hs[a][i] - ea) * (hs[a][i] - ea) / ea + (hs[b][i] - ea) * (hs[b][i] - ea) / ea;
      }
      // 7 degrees of freedom: the 0.999 quantile is about 24.3.
      CHECK(chi2 > 24.3);
    }
  CHECK(synthesize_composite(64, default_composite(), 1) == synthesize_composite(64, default_composite(), 1));

  for (const auto& r : default_composite()) CHECK(Recipe::parse(r.to_string()).kind == r.kind);
  CHECK(Recipe::parse("bernoulli:0.25").param == 0.25);
  CHECK_THROWS_AS(Recipe::parse("plaid:3"), FormatError);
  CHECK_THROWS_AS(Recipe::parse("text"), FormatError);
}

TEST_CASE("ber") {
  std::mt19937_64 rng(4);
  const Grid a = oracle::random_grid(rng, 16);
  const auto all = data_region(a);
  CHECK(ber(a, a, all) == 0.0);
  CHECK(ber(a, corrupt(a, ChannelModel::bsc(1.0), 1), all) == 1.0);
  const Grid b = oracle::random_grid(rng, 16);
  const auto interior = interior_region(a, 2);
  int diff = 0;
  for (Coord t : interior) diff += a[t] != b[t];
  CHECK(ber(a, b, interior) == doctest::Approx(static_cast<double>(diff) / interior.size()));
  CHECK_THROWS_AS(ber(a, b, std::vector<Coord>{}), DomainError);
}

TEST_CASE("netpbm round-trip") {
  std::mt19937_64 rng(5);
  std::vector<Symbol> bits(7 * 11);
  for (auto& v : bits) v = static_cast<Symbol>(rng() & 1);
  Image pbm{Image::Format::Pbm, 7, 11, Alphabet{2}, bits};
  std::stringstream io;
  write_netpbm(io, pbm);
  const Image back = read_netpbm(io);
  CHECK(back.rows == 7);
  CHECK(back.cols == 11);
  CHECK(back.pixels == bits);
  const Grid g = back.to_grid();
  CHECK(g.side() == 16);
  CHECK(Image::from_grid(g, Image::Format::Pbm).pixels == bits);

  std::vector<Symbol> gray(3 * 4);
  for (auto& v : gray) v = static_cast<Symbol>(rng() % 4);
  gray[0] = 3;
  Image pgm{Image::Format::Pgm, 3, 4, Alphabet{4}, gray};
  std::stringstream io2;
  write_netpbm(io2, pgm);
  const Image back2 = read_netpbm(io2);
  CHECK(back2.pixels == gray);
  CHECK(back2.alphabet.size == 4);

  std::istringstream commented("P1\n# comment\n3 2\n1 0 1\n0 1 0\n");
  CHECK(read_netpbm(commented).pixels == std::vector<Symbol>{1, 0, 1, 0, 1, 0});
  std::istringstream raw(std::string("P4\n3 2\n") + char(0xA0) + char(0x40));
  CHECK(read_netpbm(raw).pixels == std::vector<Symbol>{1, 0, 1, 0, 1, 0});
  std::istringstream truncated("P1\n3 2\n1 0 1\n");
  CHECK_THROWS_AS(read_netpbm(truncated), FormatError);
  std::istringstream wrong("P3\n1 1\n255\n0 0 0\n");
  CHECK_THROWS_AS(read_netpbm(wrong), FormatError);
  CHECK_THROWS_AS(read_netpbm_file("/nonexistent/file.pbm"), IoError);
}

TEST_CASE("text matrices and channel specs") {
  std::stringstream io;
  write_text_matrix(io, Matrix{{0.9, 0.1}, {0.2, 0.8}});
  CHECK(read_text_matrix(io) == Matrix{{0.9, 0.1}, {0.2, 0.8}});
  std::istringstream short_m("2 2\n1 0 0\n");
  CHECK_THROWS_AS(read_text_matrix(short_m), FormatError);
  CHECK(parse_channel_spec("bsc:0.25")(0, 1) == 0.25);
  CHECK(parse_channel_spec("identity:3").matrix() == Matrix::identity(3));
  CHECK(parse_loss_spec("hamming", 3).recon_alphabet().size == 3);
  CHECK_THROWS_AS(parse_channel_spec("bsc:x"), FormatError);
}

TEST_CASE("experiment config parsing") {
  std::istringstream in(R"(# sweep
image = synthetic
side = 32
quadrants = [checker:2, constant:1, bernoulli:0.3, hstripes:4]
seeds = [3, 4]
k = 1, 2
m = [0, 4]
modes = ["dude-2d", "sdude-2d"]
channel = "bsc:0.05"
oracle = true
)");
  const auto cfg = ExperimentConfig::parse(in);
  CHECK(cfg.side == 32);
  CHECK(cfg.quadrants[0].kind == Recipe::Kind::Checker);
  CHECK(cfg.quadrants[3].param == 4.0);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(cfg.ks == std::vector<int>{1, 2});
  CHECK(cfg.ms == std::vector<int>{0, 4});
  CHECK(cfg.modes == std::vector<Mode>{Mode::Dude2d, Mode::Sdude2d});
  CHECK(cfg.channel == "bsc:0.05");
  CHECK(cfg.oracle);

  std::istringstream bad("colour = red\n");
  CHECK_THROWS_AS(ExperimentConfig::parse(bad), FormatError);
  std::istringstream noeq("side 32\n");
  CHECK_THROWS_AS(ExperimentConfig::parse(noeq), FormatError);
}

TEST_CASE("experiment sweep") {
  ExperimentConfig cfg;
  cfg.side = 64;
  cfg.ks = {1, 2, 3, 4};
  cfg.ms = {0, 4};
  cfg.seeds = {1, 2};
  const auto report = run_experiment(cfg);
  REQUIRE(report.rows.size() == 16);
  for (const auto& row : report.rows) {
    CHECK(row.error.empty());
    // Hamming loss: interior BER is the normalized true loss.
    CHECK(std::abs(row.ber_interior - row.loss_interior) <= 1e-12);
  }
  for (const auto& d : report.rows)
    for (const auto& s : report.rows)
      if (d.mode == Mode::Dude2d && s.mode == Mode::Sdude2d && s.m == 0 && d.k == s.k) {
        CHECK(d.ber_interior == s.ber_interior);
        CHECK(d.ber_full == s.ber_full);
      }

  std::ostringstream first, second;
  report.write_csv(first);
  run_experiment(cfg).write_csv(second);
  CHECK(first.str() == second.str());
  CHECK(first.str().rfind("mode,k,m,seeds,ber_interior,ber_full,loss_interior,genie_dk,genie_dphkm,error\n", 0) == 0);

  ExperimentConfig clean = cfg;
  clean.channel = "identity:2";
  clean.modes = {Mode::Dude1dRaster, Mode::Sdude1dRaster, Mode::Dude2d, Mode::Sdude2d};
  for (const auto& row : run_experiment(clean).rows) {
    CHECK(row.ber_interior == 0.0);
    CHECK(row.ber_full == 0.0);
  }
}

TEST_CASE("experiment cells fail independently") {
  ExperimentConfig cfg;
  cfg.side = 8;
  cfg.ks = {1, 40};
  cfg.ms = {1};
  cfg.oracle = true;
  const auto report = run_experiment(cfg);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].error.empty());
  CHECK(report.rows[0].genie_dk.has_value());
  CHECK_FALSE(report.rows[1].error.empty());
  CHECK(report.rows[3].genie_dphkm.has_value() == false);
  CHECK(report.rows[2].genie_dphkm.has_value());

  const auto dir = std::filesystem::temp_directory_path() / "sdude_harness_test";
  std::filesystem::remove_all(dir);
  cfg.ks = {1};
  cfg.output_dir = dir.string();
  run_experiment(cfg);
  CHECK(std::filesystem::exists(dir / "clean.pbm"));
  CHECK(std::filesystem::exists(dir / "sdude-2d_k1_m1_s1.pbm"));
  std::filesystem::remove_all(dir);
}
