#pragma once

#include <stdexcept>
#include <string>

namespace sparsify {

// Base class for every error raised by the library. The CLI maps each
// subclass onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violation (e.g. erf_inv(1), alpha outside (0,1)).
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Input lies outside a documented lemma regime.
class OutOfRegime : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InvalidArgument("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Problem too large for an exact/dense method.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

// Reference quantity vanishes, so the requested ratio is undefined.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// kernel(L_G) is not contained in kernel(L_H); no finite spectral error.
class NotComparable : public DegenerateInput {
 public:
  using DegenerateInput::DegenerateInput;
};

}  // namespace sparsify
