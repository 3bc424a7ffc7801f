#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smale {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SMALE_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
    explicit Name() : Error(#Name) {}       \
  }

SMALE_DEFINE_ERROR(InvalidShift);
SMALE_DEFINE_ERROR(InvalidPath);
SMALE_DEFINE_ERROR(ShiftMismatch);
SMALE_DEFINE_ERROR(BracketUndefined);
SMALE_DEFINE_ERROR(OverlappingOrbitSets);
SMALE_DEFINE_ERROR(NotInStableClass);
SMALE_DEFINE_ERROR(PeriodicPointExcluded);
SMALE_DEFINE_ERROR(EmptySupport);
SMALE_DEFINE_ERROR(OutsideSupport);
SMALE_DEFINE_ERROR(InvalidBasicSet);
SMALE_DEFINE_ERROR(InexactEigenvalue);
SMALE_DEFINE_ERROR(TruncationInsufficient);
SMALE_DEFINE_ERROR(NonPositiveT);
SMALE_DEFINE_ERROR(NonPositiveS);
SMALE_DEFINE_ERROR(NonDiagonalLocalization);
SMALE_DEFINE_ERROR(InsufficientWindow);
SMALE_DEFINE_ERROR(UncertifiedCounts);
SMALE_DEFINE_ERROR(ReducibleMatrix);
SMALE_DEFINE_ERROR(ZeroMatrix);
SMALE_DEFINE_ERROR(ValidationError);

#undef SMALE_DEFINE_ERROR

/// Malformed configuration text; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace smale
