#include "sdude/channel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sdude {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

// Keeps lookup tables bounded: 2^20 denoisers is far beyond anything the
// context DP can use in practice.
constexpr std::size_t kMaxDenoisers = std::size_t{1} << 20;

} // namespace

ChannelModel::ChannelModel(Matrix transition) : pi_(std::move(transition)) {
  if (pi_.rows() == 0 || pi_.cols() == 0)
    throw ChannelError(ChannelError::Cause::DimensionMismatch, "channel matrix is empty");
  if (pi_.cols() > 256 || pi_.rows() > 256)
    throw ChannelError(ChannelError::Cause::DimensionMismatch,
                       "alphabets larger than 256 symbols are not supported");
}

ChannelModel ChannelModel::bsc(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw DomainError("BSC crossover probability must lie in [0, 1]");
  return ChannelModel(Matrix{{1.0 - delta, delta}, {delta, 1.0 - delta}});
}

ChannelModel ChannelModel::identity(int size) {
  if (size < 1) throw DomainError("identity channel needs a positive alphabet size");
  return ChannelModel(Matrix::identity(static_cast<std::size_t>(size)));
}

ChannelValidation validate_channel(const ChannelModel& channel) {
  const Matrix& pi = channel.matrix();
  ChannelValidation report;
  report.min_entry = std::numeric_limits<double>::infinity();

  for (std::size_t x = 0; x < pi.rows(); ++x) {
    double sum = 0.0;
    for (std::size_t z = 0; z < pi.cols(); ++z) {
      report.min_entry = std::min(report.min_entry, pi(x, z));
      sum += pi(x, z);
    }
    report.max_row_sum_deviation = std::max(report.max_row_sum_deviation, std::abs(sum - 1.0));
  }

  if (pi.cols() >= pi.rows()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(pi));
    report.smallest_singular_value = svd.singularValues().minCoeff();
  } else {
    report.smallest_singular_value = 0.0;
  }

  std::ostringstream msg;
  if (!(report.min_entry >= 0.0)) {
    report.cause = ChannelError::Cause::NegativeEntry;
    msg << "channel has a negative entry (" << report.min_entry << ")";
  } else if (!(report.max_row_sum_deviation <= kRowSumTolerance)) {
    report.cause = ChannelError::Cause::RowSum;
    msg << "channel row sums deviate from 1 by " << report.max_row_sum_deviation;
  } else if (!(report.smallest_singular_value > kRankTolerance)) {
    report.cause = ChannelError::Cause::RankDeficient;
    msg << "channel is not of full row rank (smallest singular value "
        << report.smallest_singular_value << ")";
  } else {
    report.accepted = true;
    msg << "ok";
  }
  report.message = msg.str();
  return report;
}

void require_valid_channel(const ChannelModel& channel) {
  auto report = validate_channel(channel);
  if (!report.accepted) throw ChannelError(*report.cause, report.message);
}

LossFunction::LossFunction(Matrix loss) : lambda_(std::move(loss)) {
  if (lambda_.rows() == 0 || lambda_.cols() == 0) throw DomainError("loss matrix is empty");
  if (lambda_.cols() > 256) throw DomainError("reconstruction alphabet larger than 256");
  for (double v : lambda_.data())
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError("loss entries must be finite and non-negative");
}

LossFunction LossFunction::hamming(int size) {
  if (size < 1) throw DomainError("Hamming loss needs a positive alphabet size");
  Matrix m(size, size, 1.0);
  for (int i = 0; i < size; ++i) m(i, i) = 0.0;
  return LossFunction(std::move(m));
}

double LossFunction::max_value() const {
  auto d = lambda_.data();
  return *std::max_element(d.begin(), d.end());
}

DenoiserSpace::DenoiserSpace(Alphabet noisy, Alphabet recon) : noisy_(noisy), recon_(recon) {
  if (noisy.size < 1 || recon.size < 1) throw DomainError("alphabets must be non-empty");
  count_ = 1;
  for (int i = 0; i < noisy.size; ++i) {
    count_ *= static_cast<std::size_t>(recon.size);
    if (count_ > kMaxDenoisers)
      throw DomainError("too many single-symbol denoisers (|X̂|^|Z| > 2^20)");
  }
  outputs_.resize(count_ * static_cast<std::size_t>(noisy.size));
  for (std::size_t s = 0; s < count_; ++s) {
    std::size_t rest = s;
    for (int z = 0; z < noisy.size; ++z) {
      outputs_[s * noisy.size + z] = static_cast<Symbol>(rest % recon.size);
      rest /= recon.size;
    }
  }
}

DenoiserCode DenoiserSpace::encode(std::span<const Symbol> outputs) const {
  if (outputs.size() != static_cast<std::size_t>(noisy_.size))
    throw DomainError("denoiser table must have one output per noisy symbol");
  DenoiserCode code = 0;
  for (std::size_t z = outputs.size(); z-- > 0;) {
    if (outputs[z] >= recon_.size) throw DomainError("denoiser output outside X̂");
    code = code * static_cast<DenoiserCode>(recon_.size) + outputs[z];
  }
  return code;
}

std::vector<Symbol> DenoiserSpace::decode(DenoiserCode s) const {
  if (s >= count_) throw DomainError("denoiser code out of range");
  const Symbol* first = outputs_.data() + static_cast<std::size_t>(s) * noisy_.size;
  return {first, first + noisy_.size};
}

DenoiserCode DenoiserSpace::identity() const {
  std::vector<Symbol> out(noisy_.size);
  for (int z = 0; z < noisy_.size; ++z) out[z] = static_cast<Symbol>(std::min(z, recon_.size - 1));
  return encode(out);
}

DenoiserCode DenoiserSpace::constant(Symbol xhat) const {
  std::vector<Symbol> out(noisy_.size, xhat);
  return encode(out);
}

Matrix expected_loss_matrix(const ChannelModel& channel, const LossFunction& loss) {
  if (loss.clean_alphabet() != channel.clean_alphabet())
    throw DomainError("loss and channel disagree on the clean alphabet");
  DenoiserSpace space(channel.noisy_alphabet(), loss.recon_alphabet());
  const int nx = channel.clean_alphabet().size;
  const int nz = channel.noisy_alphabet().size;
  Matrix p(nx, space.size());
  for (int x = 0; x < nx; ++x)
    for (std::size_t s = 0; s < space.size(); ++s) {
      double acc = 0.0;
      for (int z = 0; z < nz; ++z)
        acc += channel(x, z) * loss(x, space.apply(static_cast<DenoiserCode>(s), static_cast<Symbol>(z)));
      p(x, s) = acc;
    }
  return p;
}

EstimatedLossTable::EstimatedLossTable(DenoiserSpace space, Matrix table, double lambda_max)
    : space_(std::move(space)), table_(std::move(table)), lambda_max_(lambda_max) {
  if (table_.rows() != static_cast<std::size_t>(space_.noisy_alphabet().size) ||
      table_.cols() != space_.size())
    throw DomainError("estimated-loss table shape does not match the denoiser space");
  auto d = table_.data();
  l_max_ = *std::max_element(d.begin(), d.end());
}

EstimatedLossTable build_estimated_loss(const ChannelModel& channel, const LossFunction& loss) {
  require_valid_channel(channel);
  Matrix p = expected_loss_matrix(channel, loss);
  DenoiserSpace space(channel.noisy_alphabet(), loss.recon_alphabet());

  const Eigen::MatrixXd pi = to_eigen(channel.matrix());
  const Eigen::MatrixXd rhs = to_eigen(p);
  Eigen::MatrixXd ell;
  if (pi.rows() == pi.cols()) {
    ell = pi.fullPivLu().solve(rhs);
  } else {
    const Eigen::MatrixXd gram = pi * pi.transpose();
    ell = pi.transpose() * gram.ldlt().solve(rhs);
  }

  Matrix table(ell.rows(), ell.cols());
  for (Eigen::Index z = 0; z < ell.rows(); ++z)
    for (Eigen::Index s = 0; s < ell.cols(); ++s) table(z, s) = ell(z, s);
  return EstimatedLossTable(std::move(space), std::move(table), loss.max_value());
}

} // namespace sdude
