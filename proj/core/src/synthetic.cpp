#include "sdude/synthetic.hpp"

#include <cmath>
#include <sstream>

#include "sdude/channel_sim.hpp"

namespace sdude {

namespace {

struct KindName {
  Recipe::Kind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {Recipe::Kind::Constant, "constant"}, {Recipe::Kind::Bernoulli, "bernoulli"},
    {Recipe::Kind::VStripes, "vstripes"}, {Recipe::Kind::HStripes, "hstripes"},
    {Recipe::Kind::Checker, "checker"},   {Recipe::Kind::Halftone, "halftone"},
    {Recipe::Kind::Blobs, "blobs"},       {Recipe::Kind::Text, "text"},
};

constexpr int kBayer4[4][4] = {{0, 8, 2, 10}, {12, 4, 14, 6}, {3, 11, 1, 9}, {15, 7, 13, 5}};

// 5x7 glyph bitmaps are drawn from the stream; each glyph row is 5 bits.
void draw_text(Grid& g, double height, const CounterRng& rng) {
  const int glyph_h = std::max(3, static_cast<int>(height));
  const int glyph_w = std::max(2, glyph_h * 5 / 7);
  const int line_h = glyph_h + std::max(1, glyph_h / 3);
  const int adv = glyph_w + 1;
  std::uint64_t counter = 0;
  for (int top = 1; top + glyph_h <= g.side(); top += line_h) {
    for (int left = 1; left + glyph_w <= g.side(); left += adv) {
      const bool space = rng.uniform(counter++) < 0.15;
      const std::uint64_t shape = rng.bits(counter++);
      if (space) continue;
      for (int r = 0; r < glyph_h; ++r)
        for (int c = 0; c < glyph_w; ++c) {
          const int gr = r * 7 / glyph_h;
          const int gc = c * 5 / glyph_w;
          if ((shape >> (gr * 5 + gc)) & 1) g.set({top + r, left + c}, 1);
        }
    }
  }
}

void draw_blobs(Grid& g, double radius, const CounterRng& rng) {
  const double r = std::max(1.0, radius);
  const int count = std::max(1, static_cast<int>(g.side() * g.side() / (r * r * 8.0)));
  for (int b = 0; b < count; ++b) {
    const double cy = rng.uniform(3 * b) * g.side();
    const double cx = rng.uniform(3 * b + 1) * g.side();
    const double rad = r * (0.5 + rng.uniform(3 * b + 2));
    for (int y = 0; y < g.side(); ++y)
      for (int x = 0; x < g.side(); ++x) {
        const double dy = y - cy;
        const double dx = x - cx;
        if (dy * dy + dx * dx <= rad * rad) g.set({y, x}, 1);
      }
  }
}

} // namespace

Recipe Recipe::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  Recipe r;
  bool found = false;
  for (const auto& kn : kKindNames)
    if (kn.name == name) {
      r.kind = kn.kind;
      found = true;
    }
  if (!found) throw FormatError("unknown synthetic recipe '" + std::string(name) + "'");
  if (colon == std::string_view::npos) throw FormatError("recipe needs a parameter: '" + std::string(text) + "'");
  try {
    std::size_t used = 0;
    const std::string param(text.substr(colon + 1));
    r.param = std::stod(param, &used);
    if (used != param.size()) throw FormatError("");
  } catch (const std::exception&) {
    throw FormatError("bad recipe parameter in '" + std::string(text) + "'");
  }
  return r;
}

std::string Recipe::to_string() const {
  std::ostringstream out;
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) out << kn.name;
  out << ':' << param;
  return out.str();
}

Grid synthesize(int side, const Recipe& recipe, std::uint64_t seed, std::uint64_t stream) {
  Grid g(side, Alphabet{2});
  const CounterRng rng(seed, stream);
  const int w = std::max(1, static_cast<int>(recipe.param));
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      int v = 0;
      switch (recipe.kind) {
      case Recipe::Kind::Constant: v = recipe.param != 0.0; break;
      case Recipe::Kind::Bernoulli: v = rng.uniform(static_cast<std::uint64_t>(r) * side + c) < recipe.param; break;
      case Recipe::Kind::VStripes: v = (c / w) % 2; break;
      case Recipe::Kind::HStripes: v = (r / w) % 2; break;
      case Recipe::Kind::Checker: v = (r / w + c / w) % 2; break;
      case Recipe::Kind::Halftone: {
        const double dy = r - side / 2.0;
        const double dx = c - side / 2.0;
        const double level = 0.5 + 0.5 * std::cos(std::sqrt(dx * dx + dy * dy) * 6.283185307179586 / w);
        v = level * 16.0 > kBayer4[r % 4][c % 4] + 0.5;
        break;
      }
      case Recipe::Kind::Blobs:
      case Recipe::Kind::Text: break;
      }
      g.set({r, c}, static_cast<Symbol>(v));
    }
  if (recipe.kind == Recipe::Kind::Blobs) draw_blobs(g, recipe.param, rng);
  if (recipe.kind == Recipe::Kind::Text) draw_text(g, recipe.param, rng);
  return g;
}

Grid synthesize_composite(int side, const std::array<Recipe, 4>& quadrants, std::uint64_t seed) {
  if (!is_power_of_two(side) || side < 2) throw DomainError("composite side must be a power of two >= 2");
  const int h = side / 2;
  const Coord origin[4] = {{0, 0}, {0, h}, {h, h}, {h, 0}};
  Grid out(side, Alphabet{2});
  for (int q = 0; q < 4; ++q) {
    const Grid part = synthesize(h, quadrants[q], seed, static_cast<std::uint64_t>(q) + 1);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < h; ++c) out.set({origin[q].row + r, origin[q].col + c}, part[{r, c}]);
  }
  return out;
}

std::array<Recipe, 4> default_composite() {
  return {Recipe{Recipe::Kind::Halftone, 16}, Recipe{Recipe::Kind::Text, 7}, Recipe{Recipe::Kind::Blobs, 6},
          Recipe{Recipe::Kind::VStripes, 1}};
}

} // namespace sdude
