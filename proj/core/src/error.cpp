#include "nmr/error.hpp"

namespace nmr {

std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Cycle: return "CycleError";
    case ErrorKind::HardContradiction: return "HardContradiction";
    case ErrorKind::DanglingNode: return "DanglingNode";
    case ErrorKind::Duplicate: return "DuplicateItem";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::Mode: return "ModeError";
    case ErrorKind::NoValidPath: return "NoValidPath";
    case ErrorKind::UndrivenPoint: return "UndrivenPoint";
    case ErrorKind::DomainClosure: return "DomainClosureError";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::CycleInQualityRelation: return "CycleInQualityRelation";
    case ErrorKind::LevelOverflow: return "LevelOverflow";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& msg)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

ParseError::ParseError(int line, int column, const std::string& msg)
    : Error(ErrorKind::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

PreconditionFailed::PreconditionFailed(std::string property, std::string witness)
    : Error(ErrorKind::PreconditionFailed, property + " fails at " + witness),
      property_(std::move(property)),
      witness_(std::move(witness)) {}

}  // namespace nmr
