#pragma once

#include <stdexcept>
#include <string>

namespace sdude {

// Base class for every error the library raises. `kind()` is the short class
// name printed by the CLI next to the message.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

class ChannelError : public Error {
public:
  enum class Cause { DimensionMismatch, NegativeEntry, RowSum, RankDeficient };

  ChannelError(Cause cause, const std::string& what) : Error(what), cause_(cause) {}
  Cause cause() const noexcept { return cause_; }
  const char* kind() const noexcept override { return "ChannelError"; }

private:
  Cause cause_;
};

// Bad arguments or a request that is outside an operation's domain.
class DomainError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "DomainError"; }
};

// Malformed input text (images, matrices, configs, reports).
class FormatError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "FormatError"; }
};

class IoError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "IoError"; }
};

} // namespace sdude
