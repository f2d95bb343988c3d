// Glue between the library and the oracles.
#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "txinfer/class_table.hpp"
#include "txinfer/constraint.hpp"
#include "txinfer/generics.hpp"
#include "txinfer/pipeline.hpp"

namespace fixture {

inline txinfer::UnitResult infer_file(const std::string& name) {
  return txinfer::infer_source(oracle::read_file(oracle::data_path(name)));
}

inline oracle::Pairs to_pairs(const txinfer::ConstraintSet& cs) {
  oracle::Pairs out;
  for (const auto& c : cs) out.insert({c.lhs.name, c.rhs.name});
  return out;
}

inline oracle::Pairs to_pairs(const txinfer::GenericsMember& m) {
  oracle::Pairs out;
  for (const auto& p : m.params) {
    auto bs = m.bounds_of(p);
    if (bs.empty()) out.insert({p, "Object"});
    for (const auto& b : bs) out.insert({p, b});
  }
  return out;
}

inline std::vector<oracle::Pairs> family_pairs(const txinfer::GenericsFamily& f) {
  std::vector<oracle::Pairs> out{to_pairs(f.cls)};
  for (const auto& m : f.methods) out.push_back(to_pairs(m));
  return out;
}

inline std::string qualified(const std::string& simple) {
  return simple == "Object" ? std::string(txinfer::kObject) : "java.lang." + simple;
}

/// Universe of exactly the six ground built-ins plus Fun1/Fun2.
inline const txinfer::ClassTable& ground_table() {
  static const txinfer::ClassTable table = [] {
    txinfer::ClassTable t;
    for (const auto& n : oracle::ground_types()) t.add(*txinfer::ClassTable::bundled().find(qualified(n)));
    t.add_fun_arity(1);
    t.add_fun_arity(2);
    t.add_fun_void_arity(1);
    t.add_fun_void_arity(2);
    return t;
  }();
  return table;
}

}  // namespace fixture
