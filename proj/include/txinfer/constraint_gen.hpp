// txinfer/constraint_gen.hpp - typing conditions of a class as constraints
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "txinfer/ast.hpp"
#include "txinfer/class_table.hpp"
#include "txinfer/constraint.hpp"
#include "txinfer/fresh.hpp"

namespace txinfer {

/// Type parameter of an inferred or declared typing. The bound is absent for
/// Object.
struct GenericVar {
  std::string name;
  std::optional<Type> bound;

  friend bool operator==(const GenericVar&, const GenericVar&) = default;
};

/// One typing of a method. Class parameters occur as Var(kClassScope),
/// method parameters as Var(method index + 1).
struct MethodTyping {
  std::vector<GenericVar> generics;
  std::vector<Type> params;
  Type ret;

  friend bool operator==(const MethodTyping&, const MethodTyping&) = default;
};

/// What other classes of the unit may use of an already inferred class.
struct ClassSummary {
  std::string name;
  std::vector<GenericVar> generics;
  std::vector<std::pair<std::string, Type>> fields;
  std::vector<std::string> method_names;
  std::vector<std::vector<MethodTyping>> methods;  // per declaration, its typings
};

/// A same-class call `m'(e1..en)` inside method `caller`: the argument types
/// and the type of the call expression, all in terms of the caller's slots.
struct CallSite {
  std::size_t caller = 0;
  std::size_t callee = 0;
  std::vector<Type> args;
  Type result;
};

/// A class whose every type slot holds a term, together with its constraints.
struct AnnotatedClass {
  std::size_t class_index = 0;
  std::string name;
  std::map<SlotId, Type> slot_types;
  /// Field declaration slots, then slots of field initializer expressions.
  std::vector<SlotId> class_slots;
  /// Per method: parameter, return, local and lambda-parameter slots.
  std::vector<std::vector<SlotId>> method_decl_slots;
  /// Per method: slots of expressions in the body.
  std::vector<std::vector<SlotId>> method_expr_slots;
  std::vector<Type> field_types;
  std::vector<std::vector<Type>> method_params;
  std::vector<Type> method_returns;
  std::vector<CallSite> calls;
  /// Bounds of declared (written) type parameters.
  VarBounds declared_bounds;
  OrConstraintSet constraints;

  [[nodiscard]] const Type& slot(SlotId id) const { return slot_types.at(id); }
};

/// Generates the constraints of `program.classes[class_index]`. Classes the
/// body depends on must already be summarized in `summaries`.
AnnotatedClass generate_constraints(const Program& program, std::size_t class_index,
                                    const ClassTable& table, FreshNames& fresh,
                                    const std::map<std::string, ClassSummary>& summaries = {});

/// Order in which the classes of a unit must be inferred so that every class
/// comes after the classes it uses. Throws UnsupportedFeature on a cycle.
std::vector<std::size_t> class_inference_order(const Program& program);

}  // namespace txinfer
