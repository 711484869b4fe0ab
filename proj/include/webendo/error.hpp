#pragma once

#include <stdexcept>
#include <string>

namespace webendo {

enum class ErrorKind {
  InvalidArgument,
  CoincidentPoints,
  CoincidentLines,
  RegimeMismatch,
  ZeroForm,
  NotSymmetric,
  NoCurveFound,
  RankDeficient,
  ResidualTooLarge,
  DegenerateTangent,
  Indeterminate,
  WholePencil,
  AtOrigin,
  DegenerateTriple,
  CommonZero,
  DegreeMismatch,
  NearCriticalPoint,
  NotOnCurve,
  InconsistentImage,
  DegenerateRestriction,
  SplitMismatch,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Which branch of the indeterminacy locus of the secant map was hit.
enum class Indeterminacy {
  SingularPair,     // a != b with psi(a) == psi(b)
  RamifiedDiagonal  // a == b with a in the ramification of psi
};

class IndeterminateError : public Error {
 public:
  IndeterminateError(Indeterminacy which, const std::string& what)
      : Error(ErrorKind::Indeterminate, what), which_(which) {}

  Indeterminacy which() const noexcept { return which_; }

 private:
  Indeterminacy which_;
};

}  // namespace webendo
