// txinfer/class_table.hpp - the finite type universe and declared subtyping
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "txinfer/ast.hpp"
#include "txinfer/type.hpp"

namespace txinfer {

enum class Variance { Invariant, Covariant, Contravariant };

struct MethodSig {
  std::string name;
  std::vector<Type> params;  // class parameters appear as Var(kClassScope)
  Type ret;
};

struct FieldSig {
  std::string name;
  Type type;
};

struct ClassEntry {
  std::string name;  // qualified
  std::vector<std::string> params;
  std::vector<Variance> variance;
  std::optional<Type> super;  // direct supertype instantiation; none for Object
  std::vector<FieldSig> fields;
  std::vector<MethodSig> methods;
  std::vector<std::vector<Type>> constructors;
  bool builtin = true;

  /// Class type over its own parameters, e.g. `Pair<A, B>`.
  [[nodiscard]] Type self_type() const;
};

struct FunFamily {
  int max_arity = 8;
  Variance param_variance = Variance::Contravariant;
  Variance return_variance = Variance::Covariant;
  std::string method = "apply";
};

/// Bounds of declared type parameters, keyed by (scope, name).
using VarBounds = std::map<std::pair<int, std::string>, Type>;

inline constexpr std::string_view kObject = "java.lang.Object";
inline constexpr std::string_view kBoolean = "java.lang.Boolean";
inline constexpr std::string_view kInteger = "java.lang.Integer";
inline constexpr std::string_view kDouble = "java.lang.Double";
inline constexpr std::string_view kString = "java.lang.String";
inline constexpr std::string_view kNumber = "java.lang.Number";

Type object_type();

class ClassTable {
 public:
  /// Every built-in described by a table document (the full catalog).
  static ClassTable from_json(std::string_view json_text);
  /// Catalog shipped with the library.
  static const ClassTable& bundled();

  [[nodiscard]] const ClassEntry* find(std::string_view name) const;
  /// Qualified name for a simple or qualified class name, if known.
  [[nodiscard]] std::optional<std::string> resolve(std::string_view name) const;
  [[nodiscard]] const std::vector<ClassEntry>& entries() const { return entries_; }

  [[nodiscard]] bool has_fun(std::size_t arity) const { return fun_arities_.count(arity) > 0; }
  [[nodiscard]] bool has_fun_void(std::size_t arity) const {
    return fun_void_arities_.count(arity) > 0;
  }
  [[nodiscard]] const std::set<std::size_t>& fun_arities() const { return fun_arities_; }
  [[nodiscard]] const std::set<std::size_t>& fun_void_arities() const {
    return fun_void_arities_;
  }
  [[nodiscard]] const FunFamily& fun_family() const { return fun_; }
  [[nodiscard]] const FunFamily& fun_void_family() const { return fun_void_; }

  /// Every class and function head occurring in `t` is part of the universe.
  [[nodiscard]] bool contains(const Type& t) const;

  /// Entries D with D ⊑ `name` nominally, in table order (includes `name`).
  [[nodiscard]] std::vector<const ClassEntry*> subclasses_of(std::string_view name) const;

  /// Direct supertype of a class type instance, with arguments substituted.
  [[nodiscard]] std::optional<Type> direct_super(const Type& t) const;
  /// Walks the supertype chain of `t` up to the class named `name`.
  [[nodiscard]] std::optional<Type> as_instance_of(const Type& t, std::string_view name) const;

  /// Adds a class entry (used while assembling a universe).
  void add(ClassEntry entry);
  /// Replaces the entry of the same name, or adds it.
  void replace(ClassEntry entry);
  void add_fun_arity(std::size_t n) { fun_arities_.insert(n); }
  void add_fun_void_arity(std::size_t n) { fun_void_arities_.insert(n); }

 private:
  std::vector<ClassEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::map<std::string, std::string, std::less<>> simple_to_qualified_;
  std::set<std::size_t> fun_arities_;
  std::set<std::size_t> fun_void_arities_;
  FunFamily fun_;
  FunFamily fun_void_;
};

/// Text of the bundled table document.
std::string_view bundled_table_json();

/// Universe for one compilation unit: Object, the imported classes with their
/// supertypes, built-ins the program mentions (annotations, `new`, operators,
/// literals), function families for the arities in use, and the user classes.
ClassTable build_class_table(const Program& program, const ClassTable& catalog = ClassTable::bundled());

/// Declared subtyping on types without placeholders. Declared type parameters
/// are subtypes of their bound (Object when unbounded).
bool is_subtype(const Type& a, const Type& b, const ClassTable& table,
                const VarBounds& bounds = {});

/// Converts written type syntax into a term. `generics` maps visible type
/// parameter names to their terms.
Type resolve_type(const TypeSyntax& syntax, const ClassTable& table,
                  const std::map<std::string, Type>& generics);

}  // namespace txinfer
