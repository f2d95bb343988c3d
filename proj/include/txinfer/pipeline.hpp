// txinfer/pipeline.hpp - whole-unit inference: constraints, unifiers, generics
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "txinfer/class_table.hpp"
#include "txinfer/constraint_gen.hpp"
#include "txinfer/generics.hpp"
#include "txinfer/unify.hpp"

namespace txinfer {

/// One surviving unifier of a class with its generated generics.
struct ClassTyping {
  Solution solution;       // internal placeholders renamed, class bounds anchored
  GenericsFamily fgg;
  GenericsFamily cfgg;
  GenericsFamily family;   // after the conformance repair
  RenamingMap h;

  /// Final type of a term of the annotated class under this typing.
  [[nodiscard]] Type resolve(const Type& t) const;
};

/// A method's intersection type: one typing per distinct surviving unifier.
/// Placeholders of a typing are its own type parameters.
struct MethodSignature {
  std::string class_name;
  std::string method;
  std::size_t index = 0;
  std::vector<MethodTyping> typings;
};

struct ClassResult {
  std::size_t class_index = 0;
  std::string name;
  AnnotatedClass annotated;
  std::vector<ConstraintSet> candidates;  // flattened or-constraints
  std::vector<Solution> unifiers;         // surviving, before generics
  std::vector<ClassTyping> typings;       // same order as `unifiers`
  std::size_t representative = 0;         // typing shown in the typed source
  std::vector<MethodSignature> signatures;
};

struct UnitResult {
  Program program;
  ClassTable table;
  std::vector<ClassResult> classes;  // source order

  [[nodiscard]] const ClassResult& of(std::string_view class_name) const;
};

struct PipelineOptions {
  const ClassTable* catalog = nullptr;  // bundled table when null
  UnifyOptions unify;
};

/// Infers every class of the unit. Throws CompileError.
UnitResult infer_program(Program program, const PipelineOptions& options = {});
UnitResult infer_source(std::string_view source, const PipelineOptions& options = {});

/// Canonical form of a typing: placeholders renamed A, B, ... in first-use
/// order over parameters, return type and then bounds.
MethodTyping canonical_typing(const MethodTyping& typing);

/// Typings in presentation order: Integer, Double, String, Boolean first,
/// then by text.
void sort_typings(std::vector<MethodTyping>& typings);

}  // namespace txinfer
