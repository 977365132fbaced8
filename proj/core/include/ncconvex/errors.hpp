#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncconvex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-square matrix polynomial, mismatched block sizes, bad tuple shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operands built over different signatures, or a letter outside the arity.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (spectrum, ball radius, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation too close to a pole.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (e.g. a non-unitary matrix).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Lowering produced more terms than the configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Slice coefficient extraction residual exceeded its threshold.
class ExtractionError : public Error {
 public:
  ExtractionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Lexing/parsing failure; offset is a byte position into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace ncconvex
