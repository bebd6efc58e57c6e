#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ndl {

// Malformed or out-of-range caller input (bad vertex id, mismatched set size).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Graph file could not be parsed; line() is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input violates d-regularity or simplicity; vertex() names the offender.
class RegularityError : public InputError {
 public:
  RegularityError(std::uint64_t vertex, const std::string& what)
      : InputError("vertex " + std::to_string(vertex) + ": " + what), vertex_(vertex) {}
  std::uint64_t vertex() const noexcept { return vertex_; }

 private:
  std::uint64_t vertex_;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Infeasible generator parameters (parity, divisibility, n = 2^d ...).
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Brute-force enumerator asked for a size it cannot handle.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ndl
