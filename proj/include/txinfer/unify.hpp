// txinfer/unify.hpp - finitary unification of subtype constraints
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "txinfer/class_table.hpp"
#include "txinfer/constraint.hpp"

namespace txinfer {

/// One most general unifier: placeholder pairs left open plus the bindings
/// of the input placeholders. Placeholders introduced while solving are named
/// `$0`, `$1`, ... in order of first use.
struct Solution {
  ConstraintSet remaining;
  TphMap sigma;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct UnifyFailure {
  Constraint constraint;
  std::string reason;
  std::size_t unresolved = 0;  // constraints still open when the branch died
};

struct UnifyOptions {
  VarBounds bounds;               // bounds of declared type parameters
  int max_type_depth = 6;         // bindings deeper than this fail the branch
  std::size_t max_steps = 2'000'000;
};

struct UnifyOutcome {
  std::vector<Solution> solutions;
  /// Failure of the branch that got furthest, when some branch failed.
  std::optional<UnifyFailure> failure;
  bool step_limit_hit = false;
};

/// Prefix of placeholder names created by unify.
inline constexpr char kInternalTphPrefix = '$';
inline bool is_internal_tph(const std::string& name) {
  return !name.empty() && name.front() == kInternalTphPrefix;
}

UnifyOutcome unify(const ConstraintSet& constraints, const ClassTable& table,
                   const UnifyOptions& options = {});

using TphRelation = std::set<std::pair<std::string, std::string>>;

/// Reflexive and transitive closure over the placeholders mentioned in `rel`.
TphRelation transitive_closure(const TphRelation& rel);

/// Placeholder pairs of a constraint set (TPH < TPH lessdot constraints only).
TphRelation tph_relation(const ConstraintSet& cs);

/// True when every ground instance of `specific` is one of `general`. The
/// check builds a matching substitution and proves the open constraints of
/// `general` from those of `specific`, so it may answer false conservatively.
bool is_instance_of(const Solution& specific, const Solution& general,
                    const std::set<std::string>& inputs, const ClassTable& table,
                    const VarBounds& bounds = {});

/// Drops duplicates and solutions that are instances of another one.
std::vector<Solution> prune_instances(std::vector<Solution> solutions,
                                      const std::set<std::string>& inputs,
                                      const ClassTable& table, const VarBounds& bounds = {});

/// Keeps the solutions that are not strictly looser than another one. Two
/// solutions compare when their open constraints agree and their bindings
/// have the same shape; they are then ordered leaf by leaf with declared
/// subtyping on the class atoms.
std::vector<Solution> select_tightest(const std::vector<Solution>& solutions,
                                      const ClassTable& table, const VarBounds& bounds = {});

/// Placeholders occurring in a constraint set, in first-occurrence order.
std::vector<std::string> tphs_of(const ConstraintSet& cs);

/// `solution N:` blocks with `remaining:` and `sigma:` sections.
std::string dump(const std::vector<Solution>& solutions);

}  // namespace txinfer
