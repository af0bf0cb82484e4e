#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssfem {

/// Raised when an iterative solve hits its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, std::size_t iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  std::size_t iterations_;
  double residual_;
};

/// File could not be opened, read or written, or its content is malformed.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration (bad key, unparsable value, missing input).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ssfem
