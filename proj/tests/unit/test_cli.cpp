#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "sdude/netpbm.hpp"
#include "sdude/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const fs::path capture = fs::temp_directory_path() / "sdude_cli_capture.txt";
  const std::string cmd = std::string(SDUDE_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WEXITSTATUS(status), buf.str()};
}

struct Workspace {
  fs::path dir = fs::temp_directory_path() / "sdude_cli_test";
  Workspace() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

} // namespace

TEST_CASE("corrupt, denoise, ber and oracle from the command line") {
  Workspace ws;
  const auto clean = sdude::synthesize_composite(32, sdude::default_composite(), 1);
  sdude::write_netpbm_file(ws / "clean.pbm", sdude::Image::from_grid(clean, sdude::Image::Format::Pbm));

  auto r = run("corrupt --in " + ws / "clean.pbm" + " --channel bsc:0.1 --seed 3 --out " + ws / "noisy.pbm");
  REQUIRE(r.code == 0);
  r = run("corrupt --in " + ws / "clean.pbm" + " --channel bsc:0.1 --seed 3 --out " + ws / "noisy2.pbm");
  REQUIRE(r.code == 0);
  {
    std::ifstream a(ws / "noisy.pbm"), b(ws / "noisy2.pbm");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }

  r = run("denoise --in " + ws / "noisy.pbm" + " --channel bsc:0.1 --loss hamming --k 2 --m 2 --mode sdude-2d --out " +
          ws / "out.pbm" + " --schedule " + ws / "sched.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("estimated_loss ", 0) == 0);
  CHECK(fs::exists(ws / "out.pbm"));
  std::ifstream sched(ws / "sched.csv");
  std::string header;
  std::getline(sched, header);
  CHECK(header == "row,col,denoiser");

  r = run("ber --clean " + ws / "clean.pbm" + " --test " + ws / "clean.pbm");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == 0.0);
  r = run("ber --clean " + ws / "clean.pbm" + " --test " + ws / "out.pbm" + " --interior 2");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) < 0.1);

  r = run("oracle --clean " + ws / "clean.pbm" + " --noisy " + ws / "noisy.pbm" +
          " --target dphkm --k 1 --m 2 --report " + ws / "report.txt");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("dphkm ", 0) == 0);
  CHECK(fs::exists(ws / "report.txt"));
}

TEST_CASE("bench runs a sweep from a config file") {
  Workspace ws;
  {
    std::ofstream cfg(ws / "sweep.cfg");
    cfg << "side = 32\nk = 1\nm = 0, 2\nseeds = 1\ncsv = " << ws / "out.csv" << "\n";
  }
  const auto r = run("bench --config " + ws / "sweep.cfg");
  REQUIRE(r.code == 0);
  std::ifstream csv(ws / "out.csv");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 5);
}

TEST_CASE("errors exit nonzero with the error class") {
  Workspace ws;
  auto r = run("ber --clean " + ws / "missing.pbm" + " --test " + ws / "missing.pbm");
  CHECK(r.code == 3);
  CHECK(r.out.find("IoError") != std::string::npos);

  {
    std::ofstream bad(ws / "bad.pbm");
    bad << "P7\n";
  }
  r = run("corrupt --in " + ws / "bad.pbm" + " --out " + ws / "x.pbm");
  CHECK(r.code == 4);
  CHECK(r.out.find("FormatError") != std::string::npos);

  {
    std::ofstream img(ws / "tiny.pbm");
    img << "P1\n2 2\n0 1\n1 0\n";
    std::ofstream ch(ws / "flat.txt");
    ch << "2 2\n0.5 0.5\n0.5 0.5\n";
  }
  r = run("denoise --in " + ws / "tiny.pbm" + " --channel " + ws / "flat.txt" + " --out " + ws / "y.pbm");
  CHECK(r.code == 5);
  CHECK(r.out.find("ChannelError") != std::string::npos);

  r = run("denoise --in " + ws / "tiny.pbm" + " --mode sdude-5d --out " + ws / "y.pbm");
  CHECK(r.code == 6);
  CHECK(r.out.find("DomainError") != std::string::npos);

  r = run("frobnicate");
  CHECK(r.code != 0);
}
