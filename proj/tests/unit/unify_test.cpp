#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "properties.hpp"
#include "txinfer/unify.hpp"

using namespace txinfer;

namespace {

Type g(const std::string& simple) { return Type::cls(fixture::qualified(simple)); }

}  // namespace

TEST(Unify, EqualityBindsPlaceholder) {
  const auto out = unify({Constraint::eq(Type::tph("X"), g("Integer"))}, fixture::ground_table());
  ASSERT_EQ(out.solutions.size(), 1u);
  EXPECT_EQ(out.solutions[0].sigma.at("X"), g("Integer"));
  EXPECT_TRUE(out.solutions[0].remaining.empty());
}

TEST(Unify, LowerBoundEnumeratesSupertypes) {
  const auto out = unify({Constraint::less(g("Integer"), Type::tph("X"))}, fixture::ground_table());
  std::set<std::string> bound;
  for (const auto& s : out.solutions) bound.insert(to_string(s.sigma.at("X")));
  EXPECT_EQ(bound, (std::set<std::string>{"Integer", "Number", "Object"}));
}

TEST(Unify, PlaceholderPairsStayOpen) {
  const auto out = unify({Constraint::less(Type::tph("X"), Type::tph("Y"))}, fixture::ground_table());
  ASSERT_EQ(out.solutions.size(), 1u);
  EXPECT_EQ(fixture::to_pairs(out.solutions[0].remaining), oracle::parse_pairs("X < Y"));
}

TEST(Unify, ContradictionReportsFailure) {
  const auto out = unify({Constraint::less(g("String"), g("Integer"))}, fixture::ground_table());
  EXPECT_TRUE(out.solutions.empty());
  ASSERT_TRUE(out.failure.has_value());
}

TEST(Unify, FunctionsDecomposeWithVariance) {
  const auto f = Type::fun({Type::tph("A")}, Type::tph("R"));
  const auto out = unify({Constraint::less(f, Type::fun({g("Integer")}, g("Integer")))},
                         fixture::ground_table());
  ASSERT_FALSE(out.solutions.empty());
  for (const auto& s : out.solutions) {
    // Every solution instantiates A above Integer and R below it.
    if (s.sigma.count("A") && s.sigma.at("A").is_ground()) {
      EXPECT_TRUE(is_subtype(g("Integer"), s.sigma.at("A"), fixture::ground_table()));
    }
  }
}

TEST(Unify, TransitiveClosureIsReflexive) {
  const auto c = transitive_closure({{"A", "B"}, {"B", "C"}});
  EXPECT_TRUE(c.count({"A", "C"}));
  EXPECT_TRUE(c.count({"B", "B"}));
  EXPECT_FALSE(c.count({"C", "A"}));
}

TEST(Unify, SoundAndCompleteOnSmallProblems) {
  const auto fails = property::unify_against_brute_force(300, 7);
  EXPECT_TRUE(fails.empty()) << fails.size() << " failures, first: " << (fails.empty() ? "" : fails[0]);
}

TEST(Unify, PruneDropsInstances) {
  Solution general{{Constraint::less(Type::tph("X"), Type::tph("Y"))}, {}};
  Solution specific{{}, {{"X", g("Integer")}, {"Y", g("Integer")}}};
  const auto kept = prune_instances({specific, general}, {"X", "Y"}, fixture::ground_table());
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0], general);
}
