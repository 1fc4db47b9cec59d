#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nmr {

enum class ErrorKind {
  Cycle,
  HardContradiction,
  DanglingNode,
  Duplicate,
  UnknownNode,
  Mode,
  NoValidPath,
  UndrivenPoint,
  DomainClosure,
  BoundExceeded,
  PreconditionFailed,
  CycleInQualityRelation,
  LevelOverflow,
  Parse,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind k);

// All library errors carry a kind so callers (and the CLI) can map them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Raised by constructions whose algebraic preconditions fail.  `property` is
// the ASCII token of the failing condition, `witness` its rendered instance.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string property, std::string witness);
  const std::string& property() const noexcept { return property_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string property_;
  std::string witness_;
};

}  // namespace nmr
