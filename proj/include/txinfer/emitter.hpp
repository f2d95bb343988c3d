// txinfer/emitter.hpp - typed source, intersection reports, descriptors
#pragma once

#include <string>
#include <vector>

#include "txinfer/funtype.hpp"
#include "txinfer/pipeline.hpp"

namespace txinfer {

/// `<A extends B> (A, Integer) -> B`; a single parameter drops the parentheses.
std::string typing_to_string(const MethodTyping& typing);

/// The unit with every omitted type filled in from the representative
/// typing. Methods with several typings get them listed in a comment.
std::string emit_typed_source(const UnitResult& unit);

/// `Class.m : T1 & T2 & ...` per method declaration.
std::string emit_signatures(const UnitResult& unit);

/// `Class.m: <header>; descriptor:(...)...` per typing. Throws
/// DescriptorCollision when two typings of one method name share a descriptor.
std::vector<std::string> emit_descriptors(const UnitResult& unit);

/// Function types used anywhere in the unit's typings.
std::set<Type> used_fun_types(const UnitResult& unit);

/// Interface manifest for the used function types.
std::string emit_funifaces(const UnitResult& unit);

/// Stage dumps.
std::string dump_constraints(const UnitResult& unit);
std::string dump_unifiers(const UnitResult& unit, std::size_t max_solutions = SIZE_MAX);
std::string dump_generics(const UnitResult& unit);

}  // namespace txinfer
