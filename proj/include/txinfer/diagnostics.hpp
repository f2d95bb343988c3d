// txinfer/diagnostics.hpp - source positions and compile errors
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace txinfer {

struct SourcePos {
  int line = 0;
  int column = 0;

  [[nodiscard]] bool known() const { return line > 0; }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorKind {
  SyntaxError,
  UnsupportedFeature,
  UnknownImport,
  DuplicateClass,
  UnknownIdentifier,
  UnknownMember,
  UnknownType,
  ArityMismatch,
  Untypable,
  DescriptorCollision,
  Config,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for errors reported before any typing happens (exit status 2).
bool is_front_end_error(ErrorKind kind);

class CompileError : public std::runtime_error {
 public:
  CompileError(ErrorKind kind, std::string message, SourcePos pos = {});

  [[nodiscard]] ErrorKind kind() const { return kind_; }
  [[nodiscard]] const SourcePos& pos() const { return pos_; }
  [[nodiscard]] const std::string& message() const { return message_; }

  /// `file:line:col: error[Kind]: message`
  [[nodiscard]] std::string format(std::string_view file) const;

 private:
  ErrorKind kind_;
  std::string message_;
  SourcePos pos_;
};

}  // namespace txinfer
