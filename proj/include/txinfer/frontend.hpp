// txinfer/frontend.hpp - parsing, printing and alpha-equivalence of programs
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "txinfer/ast.hpp"

namespace txinfer {

/// Parses one compilation unit. Throws CompileError (SyntaxError or
/// UnsupportedFeature) with the offending line and column.
Program parse(std::string_view source);

/// Parses a standalone type expression such as `Pair<A, B>`.
TypeSyntax parse_type_syntax(std::string_view text);

std::string to_string(const TypeSyntax& type);

/// Customization points used by the typed-source emitter. Any hook left empty
/// falls back to what the syntax tree holds.
struct PrintHooks {
  /// Type text for a declaration slot (field, parameter, return, local,
  /// lambda parameter).
  std::function<std::optional<std::string>(SlotId)> slot_type;
  /// Text between the angle brackets of a class header.
  std::function<std::optional<std::string>(const ClassDecl&)> class_generics;
  /// Text between the angle brackets in front of a method.
  std::function<std::optional<std::string>(const ClassDecl&, std::size_t)> method_generics;
  /// Comment lines (without `//`) printed above a method.
  std::function<std::vector<std::string>(const ClassDecl&, std::size_t)> method_comments;
};

std::string print_program(const Program& program, const PrintHooks& hooks = {});

/// Bijection between declared type-parameter names of two programs.
using Renaming = std::map<std::string, std::string>;

/// Returns the renaming under which `a` and `b` are identical, if one exists.
/// Generic parameter lists compare as sets of (name, bound) pairs.
std::optional<Renaming> alpha_renaming(const Program& a, const Program& b);

inline bool alpha_equivalent(const Program& a, const Program& b) {
  return alpha_renaming(a, b).has_value();
}

}  // namespace txinfer
