#include "sdude/text_matrix.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace sdude {

Matrix read_text_matrix(std::istream& in) {
  long long rows = 0;
  long long cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0 || rows > 4096 || cols > 4096)
    throw FormatError("matrix file must start with positive 'rows cols'");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c)
      if (!(in >> m(r, c))) throw FormatError("matrix file has too few entries");
  std::string extra;
  if (in >> extra) throw FormatError("matrix file has trailing data '" + extra + "'");
  return m;
}

void write_text_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
  out.precision(old);
}

namespace {

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file '" + path + "'");
  return read_text_matrix(in);
}

double parse_number(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw FormatError("bad number in spec '" + spec + "'");
}

} // namespace

ChannelModel parse_channel_spec(const std::string& spec) {
  if (spec.rfind("bsc:", 0) == 0) return ChannelModel::bsc(parse_number(spec.substr(4), spec));
  if (spec.rfind("identity:", 0) == 0)
    return ChannelModel::identity(static_cast<int>(parse_number(spec.substr(9), spec)));
  return ChannelModel(read_matrix_file(spec));
}

LossFunction parse_loss_spec(const std::string& spec, int alphabet_size) {
  if (spec == "hamming") return LossFunction::hamming(alphabet_size);
  if (spec.rfind("hamming:", 0) == 0)
    return LossFunction::hamming(static_cast<int>(parse_number(spec.substr(8), spec)));
  return LossFunction(read_matrix_file(spec));
}

} // namespace sdude
