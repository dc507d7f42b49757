#pragma once

#include <stdexcept>
#include <string>

namespace dal {

// Every kernel failure is reported through one of these kinds so that the
// checker and the CLI can map failures to stable diagnostics.
enum class ErrorKind {
  Lexical,
  Parse,
  ArityMismatch,
  UninterpretedSymbol,
  AlreadyDifferential,
  NonArithmetic,
  SchemaMismatch,
  SideConditionViolated,
  PatternMismatch,
  EigenvariableNotFresh,
  PolarityViolation,
  Mismatch,
  ShapeMismatch,
  MalformedClaim,
  Unsupported,
  RefutedByFalsifier,
  BadScript,
  BadWitness,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Lexical: return "LexicalError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UninterpretedSymbol: return "UninterpretedSymbol";
    case ErrorKind::AlreadyDifferential: return "AlreadyDifferential";
    case ErrorKind::NonArithmetic: return "NonArithmetic";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::EigenvariableNotFresh: return "EigenvariableNotFresh";
    case ErrorKind::PolarityViolation: return "PolarityViolation";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MalformedClaim: return "MalformedClaim";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::RefutedByFalsifier: return "RefutedByFalsifier";
    case ErrorKind::BadScript: return "BadScript";
    case ErrorKind::BadWitness: return "BadWitness";
  }
  return "Error";
}

class DalError : public std::runtime_error {
 public:
  DalError(ErrorKind kind, std::string message, long position = -1)
      : std::runtime_error(format(kind, message, position)),
        kind_(kind),
        position_(position) {}

  ErrorKind kind() const { return kind_; }
  long position() const { return position_; }  // byte offset in source text, -1 if n/a

 private:
  static std::string format(ErrorKind kind, const std::string& message, long position) {
    std::string out = error_kind_name(kind);
    out += ": ";
    out += message;
    if (position >= 0) {
      out += " (at position ";
      out += std::to_string(position);
      out += ")";
    }
    return out;
  }

  ErrorKind kind_;
  long position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message, long position = -1) {
  throw DalError(kind, message, position);
}

}  // namespace dal
