#pragma once

#include <iosfwd>
#include <string>

#include "sdude/channel.hpp"
#include "sdude/matrix.hpp"

namespace sdude {

// Plain-text matrix: first line "rows cols", then rows*cols whitespace
// separated decimals in row-major order.
Matrix read_text_matrix(std::istream& in);
void write_text_matrix(std::ostream& out, const Matrix& m);

// "bsc:<delta>", "identity:<size>", or a path to a matrix file.
ChannelModel parse_channel_spec(const std::string& spec);
// "hamming" (sized from the alphabet), "hamming:<size>", or a matrix file.
LossFunction parse_loss_spec(const std::string& spec, int alphabet_size);

} // namespace sdude
