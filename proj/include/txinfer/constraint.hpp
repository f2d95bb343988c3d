// txinfer/constraint.hpp - subtype and equality constraints between type terms
#pragma once

#include <compare>
#include <string>
#include <vector>

#include "txinfer/class_table.hpp"
#include "txinfer/diagnostics.hpp"
#include "txinfer/type.hpp"

namespace txinfer {

enum class ConstraintKind { LessDot, DotEq };

struct Constraint {
  ConstraintKind kind = ConstraintKind::LessDot;
  Type lhs;
  Type rhs;
  SourcePos origin;  // not part of identity

  static Constraint less(Type lhs, Type rhs, SourcePos origin = {});
  /// Stored with the non-placeholder side on the left when there is one.
  static Constraint eq(Type lhs, Type rhs, SourcePos origin = {});

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.kind == b.kind && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend std::strong_ordering operator<=>(const Constraint& a, const Constraint& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

using ConstraintSet = std::vector<Constraint>;

/// Sorts and removes duplicates.
void normalize(ConstraintSet& cs);

/// `A < B` for lessdot, `Integer = A` for doteq.
std::string to_string(const Constraint& c, Naming naming = Naming::Simple);

struct OrGroup {
  std::string label;  // e.g. `operator +`, `call m`
  SourcePos origin;
  std::vector<ConstraintSet> alternatives;
};

struct OrConstraintSet {
  ConstraintSet base;
  std::vector<OrGroup> groups;
};

/// Every combination of base plus one alternative per group, in group order
/// times alternative order. Combinations holding a contradictory pair of
/// ground types are dropped. Throws Untypable when more than `limit`
/// combinations would have to be produced.
std::vector<ConstraintSet> flatten_constraints(const OrConstraintSet& ocs, const ClassTable& table,
                                               std::size_t limit = 1u << 16);

/// Text dump: base constraints, then each group with its alternatives.
std::string dump(const OrConstraintSet& ocs);

}  // namespace txinfer
