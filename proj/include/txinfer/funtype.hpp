// txinfer/funtype.hpp - heterogeneous names for function types
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "txinfer/class_table.hpp"
#include "txinfer/type.hpp"

namespace txinfer {

/// Separator replacing `,`, `<` and `>` in mangled names.
inline constexpr std::string_view kMangleSep = "$_$";

/// `java.lang.Integer` -> `java$lang$Integer`; generic arguments are kept as
/// `Name$_$A1$_$...$_$An$_$`.
std::string mangle_type(const Type& t);

/// `Fun1$$$_$java$lang$Double$_$java$lang$Double$_$`. Function types with
/// placeholders or type parameters inside erase to their head, e.g. `Fun1$$`.
std::string mangle_fun_type(const Type& t);

/// Inverse of mangle_type for class names known to `table` and function
/// heads. Returns nullopt on malformed input.
std::optional<Type> decode_mangled(std::string_view text, const ClassTable& table);

/// Every function type occurring in `types`, nested ones included.
std::set<Type> collect_used_fun_types(const std::vector<Type>& types);

struct FunInterfaceDecl {
  std::string name;
  std::vector<std::string> supers;  // immediate used supertypes, then the root
  std::string root;                 // erased head holding `apply`

  friend bool operator==(const FunInterfaceDecl&, const FunInterfaceDecl&) = default;
};

/// One empty interface per ground used type. A decl extends the used types
/// that are immediate supertypes of it under function variance.
std::vector<FunInterfaceDecl> fun_interface_hierarchy(const std::set<Type>& used,
                                                      const ClassTable& table);

/// `NAME : SUPER1, SUPER2, ROOT` lines.
std::string dump(const std::vector<FunInterfaceDecl>& decls);

/// `L<name>;` for classes and function types, `V` for void. Class generics erase.
std::string descriptor_of(const Type& t);
/// `(<arg>*)<ret>`.
std::string method_descriptor(const std::vector<Type>& params, const Type& ret);

}  // namespace txinfer
