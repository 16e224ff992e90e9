#ifndef TLPS_ERRORS_HPP
#define TLPS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlps {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad edge-list line, bad latent file header, ...).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Caller violated an operation precondition (dimension mismatch, bad range).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// NaN/Inf escaped into an objective value; solver state is dumped by the CLI.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tlps

#endif
