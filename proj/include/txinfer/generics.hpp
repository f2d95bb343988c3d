// txinfer/generics.hpp - turning open placeholder pairs into declared generics
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "txinfer/constraint_gen.hpp"
#include "txinfer/fresh.hpp"
#include "txinfer/unify.hpp"

namespace txinfer {

/// Bounded type parameters of one member (the class or one method). A
/// parameter without an entry in `bounds` is bounded by Object.
struct GenericsMember {
  std::vector<std::string> params;
  std::set<std::pair<std::string, std::string>> bounds;

  [[nodiscard]] bool has(const std::string& p) const;
  [[nodiscard]] std::vector<std::string> bounds_of(const std::string& p) const;
  /// `T < U` and `T < Object` strings, sorted; handy for comparisons.
  [[nodiscard]] std::set<std::string> pairs() const;

  friend bool operator==(const GenericsMember&, const GenericsMember&) = default;
};

struct GenericsFamily {
  GenericsMember cls;
  std::vector<GenericsMember> methods;  // by declaration index

  friend bool operator==(const GenericsFamily&, const GenericsFamily&) = default;
};

/// Who declares a placeholder: nullopt for the class, else a method index.
using Owner = std::optional<std::size_t>;

/// Placeholders of the class: field and initializer slots. Then each method
/// takes the placeholders of its declarations, then those of its expressions.
/// Placeholders occurring only in open pairs join a neighbour's owner.
std::map<std::string, Owner> assign_owners(const AnnotatedClass& cls, const Solution& solution);

/// A class placeholder C with C < M, where M is a method placeholder whose only
/// lower bound is C, is merged into M's place (M := C).
void anchor_class_bounds(const AnnotatedClass& cls, Solution& solution);

/// Family of generated generics: each member keeps the bounds that lie in the
/// member itself or in the class; all other parameters get Object.
GenericsFamily build_fgg(const AnnotatedClass& cls, const Solution& solution);

/// Completes the family along the same-class calls. An Object-bounded
/// argument placeholder T of the caller gets bound R when T < T' (closure of
/// the open pairs), T' < R' (closure of the callee member) and R' < R (closure
/// of the open pairs) for a callee parameter T' and return placeholder R'.
GenericsFamily complete_fgg(GenericsFamily fgg, const AnnotatedClass& cls,
                            const Solution& solution);

/// Surjective renaming of placeholders produced by the conformance repair.
using RenamingMap = std::map<std::string, std::string>;

struct ConformResult {
  GenericsFamily family;
  RenamingMap h;  // identity off its support
};

/// Collapses cycles, then infimum patterns, member by member, applying every
/// collapse to the whole family, until each member is a forest of bounds.
ConformResult enforce_java_conformance(GenericsFamily family, FreshNames& fresh);

/// Applies a renaming to every parameter and bound.
GenericsFamily rename(const GenericsFamily& family, const RenamingMap& h);

/// Per member, `T extends Bound` lines in sorted order.
std::string dump(const GenericsFamily& family, const ClassDecl& decl);

}  // namespace txinfer
