#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flowgraph {

// 1-based position in a source or spec file.
struct SourcePos {
  int line{1};
  int column{1};

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
  friend auto operator<=>(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorKind {
  Lexical,
  Syntax,
  OutsideSubset,
  UnboundVariable,
  DuplicateVariable,
  TypeMismatch,
  UnknownLabel,
  DuplicateLabel,
  JumpOutsideLoop,
  ContinueTargetNotLoop,
  Precondition,
  MalformedDocument,
  UnknownVersion,
  Integrity,
  SpecParse,
  AmbiguousTxt,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lexical: return "lexical error";
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::OutsideSubset: return "outside subset";
    case ErrorKind::UnboundVariable: return "unbound variable";
    case ErrorKind::DuplicateVariable: return "duplicate variable";
    case ErrorKind::TypeMismatch: return "type mismatch";
    case ErrorKind::UnknownLabel: return "unknown label";
    case ErrorKind::DuplicateLabel: return "duplicate label";
    case ErrorKind::JumpOutsideLoop: return "jump outside loop";
    case ErrorKind::ContinueTargetNotLoop: return "continue target is not a loop";
    case ErrorKind::Precondition: return "precondition violation";
    case ErrorKind::MalformedDocument: return "malformed document";
    case ErrorKind::UnknownVersion: return "unknown version";
    case ErrorKind::Integrity: return "integrity error";
    case ErrorKind::SpecParse: return "spec parse error";
    case ErrorKind::AmbiguousTxt: return "ambiguous txt";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

// Every failure raised by the library. `kind` distinguishes the cases callers
// need to tell apart; `pos` is set when the failure has a source location.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourcePos> pos = std::nullopt)
      : std::runtime_error(format(kind, message, pos)),
        kind_(kind),
        pos_(pos),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourcePos>& pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            const std::optional<SourcePos>& pos) {
    std::string out;
    if (pos) {
      out += std::to_string(pos->line) + ":" + std::to_string(pos->column) + ": ";
    }
    out += to_string(kind);
    out += ": ";
    out += message;
    return out;
  }

  ErrorKind kind_;
  std::optional<SourcePos> pos_;
  std::string detail_;
};

}  // namespace flowgraph
