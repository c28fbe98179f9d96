#include "sdude/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace sdude {

Grid Image::to_grid() const { return Grid::from_rows(rows, cols, alphabet, pixels); }

Image Image::from_grid(const Grid& grid, Format format) {
  Image img;
  img.format = format;
  img.rows = grid.rows();
  img.cols = grid.cols();
  img.alphabet = grid.alphabet();
  img.pixels = grid.cropped();
  if (format == Format::Pbm && img.alphabet.size > 2)
    throw DomainError("PBM output needs a binary alphabet");
  if (format == Format::Pbm) img.alphabet = Alphabet{2};
  return img;
}

namespace {

// Next whitespace-separated token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {}
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  if (tok.empty()) throw FormatError("netpbm: unexpected end of header");
  return tok;
}

int header_int(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v <= 0) throw FormatError("");
    return v;
  } catch (const std::exception&) {
    throw FormatError(std::string("netpbm: bad ") + what + " '" + tok + "'");
  }
}

} // namespace

Image read_netpbm(std::istream& in) {
  const std::string magic = header_token(in);
  if (magic != "P1" && magic != "P2" && magic != "P4" && magic != "P5")
    throw FormatError("netpbm: unsupported magic '" + magic + "'");
  const bool bitmap = magic == "P1" || magic == "P4";
  const bool raw = magic == "P4" || magic == "P5";

  Image img;
  img.format = bitmap ? Image::Format::Pbm : Image::Format::Pgm;
  img.cols = header_int(in, "width");
  img.rows = header_int(in, "height");
  int maxval = 1;
  if (!bitmap) {
    maxval = header_int(in, "maxval");
    if (maxval > 255) throw FormatError("netpbm: maxval above 255 is not supported");
  }
  img.alphabet = Alphabet{maxval + 1};
  const std::size_t count = static_cast<std::size_t>(img.rows) * img.cols;
  img.pixels.reserve(count);

  if (magic == "P1") {
    // Plain PBM allows digits without separating whitespace.
    int ch;
    while (img.pixels.size() < count && (ch = in.get()) != EOF) {
      if (ch == '#') {
        while ((ch = in.get()) != EOF && ch != '\n') {}
      } else if (ch == '0' || ch == '1') {
        img.pixels.push_back(static_cast<Symbol>(ch - '0'));
      } else if (!std::isspace(ch)) {
        throw FormatError("netpbm: bad P1 pixel character");
      }
    }
  } else if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      int v = -1;
      if (!(in >> v)) break;
      if (v < 0 || v > maxval) throw FormatError("netpbm: gray level above maxval");
      img.pixels.push_back(static_cast<Symbol>(v));
    }
  } else if (raw && bitmap) {
    const std::size_t stride = (static_cast<std::size_t>(img.cols) + 7) / 8;
    std::vector<char> row(stride);
    for (int r = 0; r < img.rows && in.read(row.data(), static_cast<std::streamsize>(stride)); ++r)
      for (int c = 0; c < img.cols; ++c)
        img.pixels.push_back(static_cast<Symbol>((static_cast<unsigned char>(row[c / 8]) >> (7 - c % 8)) & 1));
  } else {
    std::vector<char> buf(count);
    if (in.read(buf.data(), static_cast<std::streamsize>(count)))
      for (char b : buf) {
        auto v = static_cast<unsigned char>(b);
        if (v > maxval) throw FormatError("netpbm: gray level above maxval");
        img.pixels.push_back(v);
      }
  }
  if (img.pixels.size() != count) throw FormatError("netpbm: truncated pixel data");
  return img;
}

Image read_netpbm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_netpbm(in);
}

void write_netpbm(std::ostream& out, const Image& image) {
  if (image.pixels.size() != static_cast<std::size_t>(image.rows) * image.cols)
    throw DomainError("image payload does not match its dimensions");
  const bool bitmap = image.format == Image::Format::Pbm;
  if (bitmap && image.alphabet.size > 2) throw DomainError("PBM output needs a binary alphabet");
  out << (bitmap ? "P1" : "P2") << '\n' << image.cols << ' ' << image.rows << '\n';
  if (!bitmap) out << std::max(1, image.alphabet.size - 1) << '\n';
  // Plain formats ask for lines of at most 70 characters.
  const std::size_t per_line = bitmap ? 35 : 17;
  for (int r = 0; r < image.rows; ++r) {
    for (int c = 0; c < image.cols; ++c) {
      if (c > 0) out << (c % per_line == 0 ? '\n' : ' ');
      out << static_cast<int>(image.pixels[static_cast<std::size_t>(r) * image.cols + c]);
    }
    out << '\n';
  }
}

void write_netpbm_file(const std::string& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_netpbm(out, image);
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace sdude
