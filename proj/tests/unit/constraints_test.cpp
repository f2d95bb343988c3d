#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "txinfer/constraint_gen.hpp"
#include "txinfer/frontend.hpp"

using namespace txinfer;

namespace {

AnnotatedClass annotate(const std::string& src, std::size_t index = 0) {
  const auto program = parse(src);
  const auto table = build_class_table(program);
  FreshNames fresh;
  return generate_constraints(program, index, table, fresh);
}

}  // namespace

TEST(Constraints, EverySlotGetsATerm) {
  const auto program = parse(oracle::read_file(oracle::data_path("Fac.jtx")));
  const auto table = build_class_table(program);
  FreshNames fresh;
  const auto ac = generate_constraints(program, 0, table, fresh);
  EXPECT_EQ(ac.method_decl_slots.size(), 1u);
  for (auto id : ac.method_decl_slots[0]) EXPECT_TRUE(ac.slot(id).is_tph());
  EXPECT_FALSE(ac.constraints.base.empty());
}

TEST(Constraints, OperatorsAreOverloadedOverImportedTypes) {
  const auto program = parse(oracle::read_file(oracle::data_path("OL.jtx")));
  const auto table = build_class_table(program);
  FreshNames fresh;
  const auto ac = generate_constraints(program, 0, table, fresh);
  ASSERT_FALSE(ac.constraints.groups.empty());
  EXPECT_GE(ac.constraints.groups.front().alternatives.size(), 3u);
}

TEST(Constraints, FlattenTakesOneAlternativePerGroup) {
  const auto program = parse(oracle::read_file(oracle::data_path("OL.jtx")));
  const auto table = build_class_table(program);
  FreshNames fresh;
  const auto ac = generate_constraints(program, 0, table, fresh);
  const auto flat = flatten_constraints(ac.constraints, table);
  ASSERT_FALSE(flat.empty());
  std::size_t product = 1;
  for (const auto& g : ac.constraints.groups) product *= g.alternatives.size();
  EXPECT_LE(flat.size(), product);
  for (const auto& cs : flat) EXPECT_GE(cs.size(), ac.constraints.base.size());
}

TEST(Constraints, FlattenLimitIsEnforced) {
  const auto program = parse(oracle::read_file(oracle::data_path("OL.jtx")));
  const auto table = build_class_table(program);
  FreshNames fresh;
  const auto ac = generate_constraints(program, 0, table, fresh);
  EXPECT_THROW(flatten_constraints(ac.constraints, table, 1), CompileError);
}

TEST(Constraints, UnknownIdentifierIsAFrontEndError) {
  try {
    annotate("class A { m() { return zz; } }");
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownIdentifier);
  }
}

TEST(Constraints, DependencyOrderPutsCalleesFirst) {
  const auto program = parse(
      "class B { f(a) { return new A().g(a); } }\n"
      "class A { g(x) { return x; } }\n");
  EXPECT_EQ(class_inference_order(program), (std::vector<std::size_t>{1, 0}));
}

TEST(Constraints, NormalizeSortsAndDeduplicates) {
  ConstraintSet cs = {Constraint::less(Type::tph("B"), Type::tph("A")),
                      Constraint::less(Type::tph("A"), Type::tph("B")),
                      Constraint::less(Type::tph("B"), Type::tph("A"))};
  normalize(cs);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(to_string(cs[0]), "A < B");
}
