// txinfer/type.hpp - type terms shared by every stage of the pipeline
#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace txinfer {

enum class TypeKind {
  Class,    // nominal class type, qualified name plus arguments
  Tph,      // type placeholder introduced by inference
  Var,      // declared (rigid) type parameter, identified by scope + name
  Fun,      // FunN$$<T1..TN, R>; args holds the N parameters followed by R
  FunVoid,  // FunVoidN$$<T1..TN>
  Void,
};

/// Scope tag for declared type parameters. Class-level parameters use
/// kClassScope, method-level ones use the method index + 1.
inline constexpr int kClassScope = 0;

struct Type {
  TypeKind kind = TypeKind::Void;
  std::string name;
  int scope = kClassScope;
  std::vector<Type> args;

  static Type cls(std::string name, std::vector<Type> args = {});
  static Type tph(std::string id);
  static Type var(std::string name, int scope = kClassScope);
  static Type fun(std::vector<Type> params, Type ret);
  static Type fun_void(std::vector<Type> params);
  static Type void_type();

  [[nodiscard]] bool is_tph() const { return kind == TypeKind::Tph; }
  [[nodiscard]] bool is_var() const { return kind == TypeKind::Var; }
  [[nodiscard]] bool is_class() const { return kind == TypeKind::Class; }
  [[nodiscard]] bool is_function() const {
    return kind == TypeKind::Fun || kind == TypeKind::FunVoid;
  }
  [[nodiscard]] bool is_void() const { return kind == TypeKind::Void; }

  /// Number of function parameters (Fun/FunVoid only).
  [[nodiscard]] std::size_t fun_arity() const;
  /// Parameter list of a function type.
  [[nodiscard]] std::vector<Type> fun_params() const;
  /// Return type of a Fun type; Void for FunVoid.
  [[nodiscard]] Type fun_return() const;
  /// `Fun1$$`, `FunVoid2$$`; empty for other kinds.
  [[nodiscard]] std::string fun_head() const;

  /// No placeholders anywhere inside.
  [[nodiscard]] bool is_ground() const;
  /// No placeholders and no declared type parameters.
  [[nodiscard]] bool is_closed() const;
  [[nodiscard]] bool contains_tph(const std::string& id) const;
  [[nodiscard]] int depth() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);
};

enum class Naming { Simple, Qualified };

/// Java-like rendering: `Integer`, `Pair<A, B>`, `Fun1$$<Integer, Integer>`, `void`.
std::string to_string(const Type& t, Naming naming = Naming::Simple);

/// `java.lang.Integer` -> `Integer`.
std::string simple_name(const std::string& qualified);

/// Placeholder ids in first-occurrence (left to right) order.
std::vector<std::string> tphs_of(const Type& t);
void collect_tphs(const Type& t, std::vector<std::string>& out);

using TphMap = std::map<std::string, Type>;

/// Replace placeholders by their images; unmapped ones stay as they are.
Type substitute(const TphMap& map, const Type& t);

/// Rename placeholders and declared type parameters in one pass. The callback
/// returns the replacement or nullptr to keep the node.
Type map_leaves(const Type& t, const std::function<const Type*(const Type&)>& replace);

/// Canonical placeholder names: A, B, ..., Z, AA, AB, ...
std::string alpha_name(std::size_t index);

}  // namespace txinfer
