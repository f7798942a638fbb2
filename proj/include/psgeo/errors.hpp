#pragma once

#include <stdexcept>
#include <string>

namespace psgeo {

/// Raised when a symmetric factorization fails even after the full jitter escalation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration, priors or arguments.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file; the message carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A sampler step failed; carries the iteration and a printable state snapshot.
class SamplerError : public std::runtime_error {
 public:
  SamplerError(const std::string& what, std::size_t iteration, std::string snapshot)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration),
        snapshot_(std::move(snapshot)) {}
  std::size_t iteration() const noexcept { return iteration_; }
  const std::string& snapshot() const noexcept { return snapshot_; }

 private:
  std::size_t iteration_;
  std::string snapshot_;
};

}  // namespace psgeo
