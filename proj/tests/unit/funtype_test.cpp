#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "properties.hpp"
#include "txinfer/funtype.hpp"

using namespace txinfer;

namespace {

Type g(const std::string& simple) { return Type::cls(fixture::qualified(simple)); }

}  // namespace

TEST(FunType, MangledNames) {
  EXPECT_EQ(mangle_fun_type(Type::fun({g("Integer")}, g("Integer"))),
            "Fun1$$$_$java$lang$Integer$_$java$lang$Integer$_$");
  EXPECT_EQ(mangle_fun_type(Type::fun({Type::tph("A")}, g("Integer"))), "Fun1$$");
}

TEST(FunType, NestedRoundTrip) {
  const auto inner = Type::fun({g("String")}, g("Boolean"));
  const auto outer = Type::fun({inner, g("Integer")}, Type::fun({g("Integer")}, inner));
  const auto name = mangle_fun_type(outer);
  const auto back = decode_mangled(name, fixture::ground_table());
  ASSERT_TRUE(back.has_value()) << name;
  EXPECT_EQ(*back, outer);
}

TEST(FunType, SmallTypesManglingIsInjective) {
  const auto fails = property::mangling_injective_and_decodable();
  EXPECT_TRUE(fails.empty()) << (fails.empty() ? "" : fails[0]);
}

TEST(FunType, DecodeRejectsGarbage) {
  EXPECT_FALSE(decode_mangled("Fun1$$$_$nope$_$", fixture::ground_table()).has_value());
}

TEST(FunType, Descriptors) {
  EXPECT_EQ(descriptor_of(g("Integer")), "Ljava$lang$Integer;");
  EXPECT_EQ(descriptor_of(Type::void_type()), "V");
  EXPECT_EQ(method_descriptor({g("String")}, Type::void_type()), "(Ljava$lang$String;)V");
}

TEST(FunType, HierarchyFollowsVariance) {
  const auto sub = Type::fun({g("Number")}, g("Integer"));
  const auto sup = Type::fun({g("Integer")}, g("Number"));
  const auto other = Type::fun({g("String")}, g("String"));
  const auto decls = fun_interface_hierarchy({sub, sup, other}, fixture::ground_table());
  ASSERT_EQ(decls.size(), 3u);
  for (const auto& d : decls) {
    EXPECT_EQ(d.supers.back(), d.root);
    if (d.name == mangle_fun_type(sub)) {
      EXPECT_EQ(d.supers, (std::vector<std::string>{mangle_fun_type(sup), d.root}));
    } else {
      EXPECT_EQ(d.supers.size(), 1u) << d.name;
    }
  }
}

TEST(FunType, CollectsNestedFunctionTypes) {
  const auto inner = Type::fun({g("String")}, g("Boolean"));
  const auto used = collect_used_fun_types({Type::fun({inner}, g("Integer")), g("Integer")});
  EXPECT_EQ(used.size(), 2u);
  EXPECT_TRUE(used.count(inner));
}
