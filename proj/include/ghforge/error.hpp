#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghforge {

enum class ErrorKind {
  AxiomViolation,
  LabelError,
  IndexError,
  NonpositiveFactor,
  NonpositiveR,
  NonpositiveOffset,
  InvalidCorrespondence,
  SizeMismatch,
  CapExceeded,
  DiameterExceeded,
  ParamMismatch,
  LengthMismatch,
  DimensionMismatch,
  RangeExceeded,
  DistortionTooLarge,
  StructureViolation,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is stable and is what the CLI
/// reports in its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Axiom { Asymmetry, NonzeroDiagonal, Negative, Triangle, ZeroOffDiagonal };

std::string_view to_string(Axiom axiom);

/// A metric axiom failed. `witness()` holds the offending point indices:
/// one index for a diagonal entry, two for a pair, three (i, j, k) for
/// d(i,k) > d(i,j) + d(j,k).
class AxiomViolation : public Error {
 public:
  AxiomViolation(Axiom axiom, std::vector<std::size_t> witness, const std::string& message)
      : Error(ErrorKind::AxiomViolation, message), axiom_(axiom), witness_(std::move(witness)) {}

  Axiom axiom() const noexcept { return axiom_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  Axiom axiom_;
  std::vector<std::size_t> witness_;
};

/// Malformed input document. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(ErrorKind::ParseError, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ghforge
