#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdude/error.hpp"
#include "sdude/matrix.hpp"

namespace sdude {

using Symbol = std::uint8_t;
using DenoiserCode = std::uint32_t;

// Finite alphabet {0, ..., size-1}.
struct Alphabet {
  int size = 0;
  friend bool operator==(Alphabet, Alphabet) = default;
};

// Discrete memoryless channel: row x holds the distribution of the noisy
// symbol given clean symbol x.
class ChannelModel {
public:
  explicit ChannelModel(Matrix transition);

  static ChannelModel bsc(double delta);
  static ChannelModel identity(int size);

  Alphabet clean_alphabet() const { return {static_cast<int>(pi_.rows())}; }
  Alphabet noisy_alphabet() const { return {static_cast<int>(pi_.cols())}; }
  const Matrix& matrix() const { return pi_; }
  double operator()(int x, int z) const { return pi_(x, z); }

private:
  Matrix pi_;
};

struct ChannelValidation {
  bool accepted = false;
  std::optional<ChannelError::Cause> cause;
  std::string message;
  double max_row_sum_deviation = 0.0;
  double min_entry = 0.0;
  // Smallest of the |X| singular values; 0 when |Z| < |X|.
  double smallest_singular_value = 0.0;
};

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kRankTolerance = 1e-9;

ChannelValidation validate_channel(const ChannelModel& channel);

// Throws ChannelError carrying the first failing cause.
void require_valid_channel(const ChannelModel& channel);

// Loss Λ(x, x̂) on clean x reconstructed as x̂.
class LossFunction {
public:
  explicit LossFunction(Matrix loss);

  static LossFunction hamming(int size);

  Alphabet clean_alphabet() const { return {static_cast<int>(lambda_.rows())}; }
  Alphabet recon_alphabet() const { return {static_cast<int>(lambda_.cols())}; }
  const Matrix& matrix() const { return lambda_; }
  double operator()(int x, int xhat) const { return lambda_(x, xhat); }
  double max_value() const;

private:
  Matrix lambda_;
};

// The set of single-symbol denoisers s: Z -> X̂. A denoiser is encoded as the
// base-|X̂| integer whose digit z (least significant first) is s(z).
class DenoiserSpace {
public:
  DenoiserSpace(Alphabet noisy, Alphabet recon);

  Alphabet noisy_alphabet() const { return noisy_; }
  Alphabet recon_alphabet() const { return recon_; }
  std::size_t size() const { return count_; }

  Symbol apply(DenoiserCode s, Symbol z) const {
    return outputs_[static_cast<std::size_t>(s) * noisy_.size + z];
  }

  DenoiserCode encode(std::span<const Symbol> outputs) const;
  std::vector<Symbol> decode(DenoiserCode s) const;

  DenoiserCode identity() const;
  DenoiserCode constant(Symbol xhat) const;

private:
  Alphabet noisy_;
  Alphabet recon_;
  std::size_t count_ = 0;
  std::vector<Symbol> outputs_;  // count_ x |Z| lookup table
};

// P(x, s) = sum_z Π(x,z) Λ(x, s(z)), a |X| x |S| matrix.
Matrix expected_loss_matrix(const ChannelModel& channel, const LossFunction& loss);

// Unbiased estimated loss ℓ(z, s): for every clean x,
//   sum_z Π(x,z) ℓ(z,s) = sum_z Π(x,z) Λ(x, s(z)).
class EstimatedLossTable {
public:
  EstimatedLossTable(DenoiserSpace space, Matrix table, double lambda_max);

  const DenoiserSpace& space() const { return space_; }
  const Matrix& matrix() const { return table_; }
  double operator()(Symbol z, DenoiserCode s) const { return table_(z, s); }
  std::span<const double> row(Symbol z) const { return table_.row(z); }

  double l_max() const { return l_max_; }
  double lambda_max() const { return lambda_max_; }
  double L_max() const { return lambda_max_ + l_max_; }

private:
  DenoiserSpace space_;
  Matrix table_;  // |Z| x |S|
  double lambda_max_ = 0.0;
  double l_max_ = 0.0;
};

// Square Π is inverted exactly; otherwise the minimum-norm right inverse
// Π^T (Π Π^T)^{-1} is used. Throws ChannelError on an invalid channel.
EstimatedLossTable build_estimated_loss(const ChannelModel& channel, const LossFunction& loss);

} // namespace sdude
