#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sdude/channel.hpp"
#include "sdude/grid.hpp"

namespace sdude {

// Finite-alphabet image. PBM maps pixel value v (1 = black) to symbol v; PGM
// maps gray level g to symbol g, so the alphabet is {0, ..., maxval}.
struct Image {
  enum class Format { Pbm, Pgm };

  Format format = Format::Pbm;
  int rows = 0;
  int cols = 0;
  Alphabet alphabet{2};
  std::vector<Symbol> pixels;  // row-major

  Grid to_grid() const;
  static Image from_grid(const Grid& grid, Format format);
};

// Reads P1/P2 (ASCII) and P4/P5 (raw) files; PGM maxval must be <= 255.
Image read_netpbm(std::istream& in);
Image read_netpbm_file(const std::string& path);

// Writes ASCII P1 / P2.
void write_netpbm(std::ostream& out, const Image& image);
void write_netpbm_file(const std::string& path, const Image& image);

} // namespace sdude
