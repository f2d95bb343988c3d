#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "properties.hpp"
#include "txinfer/generics.hpp"

using namespace txinfer;
using oracle::Pairs;

namespace {

GenericsMember member(std::vector<std::string> params, const Pairs& bounds) {
  GenericsMember m;
  m.params = std::move(params);
  for (const auto& b : bounds)
    if (b.second != "Object") m.bounds.insert(b);
  return m;
}

}  // namespace

TEST(Generics, FamilyOfTheIdentityProgram) {
  const auto unit = fixture::infer_file("TPHsToGenerics.jtx");
  const auto& t = unit.of("TPHsToGenerics").typings.at(0);
  const std::vector<Pairs> expected = {
      oracle::parse_pairs("UD < DZP, DZP < ETX, ETX < Object"), oracle::parse_pairs("V < UD"),
      oracle::parse_pairs("AN < AI, AM < Object, AI < Object"),
      oracle::parse_pairs("AB < AA, AA < Object, AD < Object, AE < Object")};
  EXPECT_TRUE(oracle::match_families(fixture::family_pairs(t.fgg), expected).has_value());
}

TEST(Generics, CompletionFollowsCalls) {
  const auto unit = fixture::infer_file("TPHsToGenerics.jtx");
  const auto& t = unit.of("TPHsToGenerics").typings.at(0);
  const auto before = fixture::family_pairs(t.fgg);
  const auto after = fixture::family_pairs(t.cfgg);
  // Only m2 changes: one Object bound becomes a bound on another parameter.
  EXPECT_EQ(before[0], after[0]);
  EXPECT_EQ(before[1], after[1]);
  EXPECT_EQ(before[2], after[2]);
  EXPECT_NE(before[3], after[3]);
  EXPECT_EQ(before[3].size(), after[3].size());
}

TEST(Generics, OwnersCoverEveryOpenPlaceholder) {
  const auto unit = fixture::infer_file("Mutual.jtx");
  const auto& cr = unit.of("Mutual");
  const auto& sol = cr.typings.at(0).solution;
  const auto owners = assign_owners(cr.annotated, sol);
  for (const auto& c : sol.remaining) {
    EXPECT_TRUE(owners.count(c.lhs.name)) << c.lhs.name;
    EXPECT_TRUE(owners.count(c.rhs.name)) << c.rhs.name;
  }
}

TEST(Generics, CycleCollapsesToOneParameter) {
  GenericsFamily f;
  f.methods.push_back(member({"A", "B", "C"}, oracle::parse_pairs("A < B, B < C, C < A")));
  FreshNames fresh(500);
  const auto res = enforce_java_conformance(f, fresh);
  ASSERT_EQ(res.family.methods[0].params.size(), 1u);
  EXPECT_TRUE(res.family.methods[0].bounds.empty());
  EXPECT_EQ(res.h.at("A"), res.h.at("B"));
  EXPECT_EQ(res.h.at("B"), res.h.at("C"));
}

TEST(Generics, InfimumCollapses) {
  GenericsFamily f;
  f.methods.push_back(member({"X", "Y", "Z"}, oracle::parse_pairs("X < Y, X < Z")));
  FreshNames fresh(500);
  const auto res = enforce_java_conformance(f, fresh);
  for (const auto& p : res.family.methods[0].params) {
    EXPECT_LE(res.family.methods[0].bounds_of(p).size(), 1u);
  }
}

TEST(Generics, ConformingFamilyIsUnchanged) {
  GenericsFamily f;
  f.cls = member({"C"}, {});
  f.methods.push_back(member({"X", "Y"}, oracle::parse_pairs("X < Y, Y < C")));
  FreshNames fresh(500);
  const auto res = enforce_java_conformance(f, fresh);
  EXPECT_EQ(res.family, f);
  EXPECT_TRUE(res.h.empty() ||
              std::all_of(res.h.begin(), res.h.end(), [](const auto& e) { return e.first == e.second; }));
}

TEST(Generics, RepairPreservesOrderAndConforms) {
  const auto fails = property::conformance_lemma(300, 11);
  EXPECT_TRUE(fails.empty()) << fails.size() << " failures, first: " << (fails.empty() ? "" : fails[0]);
}

TEST(Generics, RenameAppliesToBounds) {
  GenericsFamily f;
  f.methods.push_back(member({"X", "Y"}, oracle::parse_pairs("X < Y")));
  const auto r = rename(f, {{"Y", "Q"}});
  EXPECT_EQ(r.methods[0].bounds_of("X"), std::vector<std::string>{"Q"});
}
