#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracsph {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-domain numeric argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameter; `parameter()` names the offending input.
class ConstructionError : public Error {
 public:
  ConstructionError(std::string parameter, const std::string& what)
      : Error(parameter + ": " + what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// Fractional order outside (0, 1) at some evaluation point.
class OrderRangeError : public Error {
 public:
  OrderRangeError(double x, double alpha)
      : Error("fractional order " + std::to_string(alpha) + " at x = " + std::to_string(x) +
              " is outside (0, 1)"),
        x_(x),
        alpha_(alpha) {}
  double x() const noexcept { return x_; }
  double alpha() const noexcept { return alpha_; }

 private:
  double x_;
  double alpha_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Γ-type function evaluated at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Requested (function, operator) combination has no closed form.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error. `offset()` is the byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
      : Error(format(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (k) msg += k + 1 == expected.size() ? " or " : ", ";
      msg += expected[k];
    }
    return msg + ", found " + found;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Invalid experiment configuration; `field()` is the dotted config key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace fracsph
