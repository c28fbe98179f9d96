#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "sdude/grid.hpp"

namespace sdude {

// Binary texture generators for building heterogeneous test images.
struct Recipe {
  enum class Kind {
    Constant,   // param: symbol value (0 or 1)
    Bernoulli,  // param: probability of a 1, i.i.d. per cell
    VStripes,   // param: stripe width in cells, vertical bands
    HStripes,   // param: stripe width in cells, horizontal bands
    Checker,    // param: square size in cells
    Halftone,   // param: period of an ordered-dither radial gradient
    Blobs,      // param: blob radius in cells
    Text,       // param: glyph cell height in pixels
  };

  Kind kind = Kind::Constant;
  double param = 0.0;

  // "name:param", e.g. "bernoulli:0.3", "vstripes:2", "text:7".
  static Recipe parse(std::string_view text);
  std::string to_string() const;
};

Grid synthesize(int side, const Recipe& recipe, std::uint64_t seed, std::uint64_t stream = 0);

// Quadrants are filled in quadtree child order: upper-left, upper-right,
// lower-right, lower-left.
Grid synthesize_composite(int side, const std::array<Recipe, 4>& quadrants, std::uint64_t seed);

// A composite whose quadrants call for different denoising rules under a
// binary symmetric channel.
std::array<Recipe, 4> default_composite();

} // namespace sdude
