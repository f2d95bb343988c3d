#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "txinfer/class_table.hpp"
#include "txinfer/type.hpp"

using namespace txinfer;

namespace {

Type g(const std::string& simple) { return Type::cls(fixture::qualified(simple)); }

}  // namespace

TEST(Types, PrintsSimpleNames) {
  EXPECT_EQ(to_string(g("Integer")), "Integer");
  EXPECT_EQ(to_string(Type::fun({g("Integer")}, g("String"))), "Fun1$$<Integer, String>");
  EXPECT_EQ(simple_name("java.lang.Integer"), "Integer");
}

TEST(Types, AlphaNamesAreDistinct) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 200; ++i) EXPECT_TRUE(seen.insert(alpha_name(i)).second);
  EXPECT_EQ(alpha_name(0), "A");
}

TEST(Types, SubstituteReplacesPlaceholders) {
  const auto t = Type::fun({Type::tph("X")}, Type::tph("Y"));
  const auto s = substitute({{"X", g("Integer")}}, t);
  EXPECT_EQ(s, Type::fun({g("Integer")}, Type::tph("Y")));
  EXPECT_FALSE(s.is_ground());
}

TEST(ClassTable, NominalSubtyping) {
  const auto& t = fixture::ground_table();
  EXPECT_TRUE(is_subtype(g("Integer"), g("Number"), t));
  EXPECT_TRUE(is_subtype(g("Integer"), g("Object"), t));
  EXPECT_FALSE(is_subtype(g("Number"), g("Integer"), t));
  EXPECT_FALSE(is_subtype(g("String"), g("Integer"), t));
}

// Function types: contravariant in parameters, covariant in the result.
TEST(ClassTable, FunctionVariance) {
  const auto& t = fixture::ground_table();
  const std::vector<std::string> chain = {"Integer", "Number", "Object"};
  auto below = [](std::size_t a, std::size_t b) { return a <= b; };  // index order = subtype order
  for (std::size_t a1 = 0; a1 < 3; ++a1)
    for (std::size_t r1 = 0; r1 < 3; ++r1)
      for (std::size_t a2 = 0; a2 < 3; ++a2)
        for (std::size_t r2 = 0; r2 < 3; ++r2) {
          const auto f1 = Type::fun({g(chain[a1])}, g(chain[r1]));
          const auto f2 = Type::fun({g(chain[a2])}, g(chain[r2]));
          EXPECT_EQ(is_subtype(f1, f2, t), below(a2, a1) && below(r1, r2))
              << to_string(f1) << " vs " << to_string(f2);
        }
  EXPECT_FALSE(is_subtype(Type::fun({g("Integer")}, g("Integer")), g("Object"), t) &&
               is_subtype(g("Object"), Type::fun({g("Integer")}, g("Integer")), t));
}

TEST(ClassTable, BundledCatalogResolvesSimpleNames) {
  const auto& t = ClassTable::bundled();
  EXPECT_EQ(t.resolve("Integer").value_or(""), "java.lang.Integer");
  EXPECT_NE(t.find("java.lang.Object"), nullptr);
}

TEST(ClassTable, RejectsMalformedJson) {
  EXPECT_THROW(ClassTable::from_json("{not json"), CompileError);
}
