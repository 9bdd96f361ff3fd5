#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "goalbench/domain.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

bool has_rule(const std::vector<Violation> & v, Rule rule, const std::string & dmu = {})
{
  return std::any_of(v.begin(), v.end(), [&](const Violation & x) {
    return x.rule == rule && (dmu.empty() || x.dmu_id == dmu);
  });
}

} // namespace

TEST(Dataset, SixUnitIsAdmissible)
{
  const auto d = fixtures::table1();
  EXPECT_TRUE(validate_dataset(d).empty());
  EXPECT_EQ(d.dmu_count(), 6u);
  EXPECT_EQ(d.indicator_count(), 2u);
}

TEST(Dataset, LookupById)
{
  const auto d = fixtures::table1();
  EXPECT_EQ(d.find_dmu("D"), 3u);
  EXPECT_FALSE(d.find_dmu("Z").has_value());
  EXPECT_THROW(d.dmu("Z"), std::out_of_range);
  EXPECT_EQ(d.dmu("F").goals[1], 6.6);
}

TEST(Schedule, DefaultCeilingIsActualLevel)
{
  const auto d = fixtures::table1();
  EXPECT_EQ(d.schedule.ceiling(d.dmu("D"), 0), 3.0);
  EXPECT_EQ(d.schedule.ceiling(d.dmu("D"), 1), 4.0);
}

TEST(Schedule, ExplicitCeilingsAndOverrides)
{
  auto d = fixtures::table1();
  d.schedule.ceilings = ExplicitCeilings{{{"A", {2.0, 3.0}}}};
  d.schedule.weight_overrides["B"] = {0.25, 0.75};
  EXPECT_EQ(d.schedule.ceiling(d.dmu("A"), 1), 3.0);
  EXPECT_EQ(d.schedule.ceiling(d.dmu("C"), 0), 9.0);
  EXPECT_EQ(d.schedule.weight(d.dmu("B"), 1), 0.75);
  EXPECT_EQ(d.schedule.weight(d.dmu("C"), 1), 0.5);
  EXPECT_TRUE(validate_dataset(d).empty());
}

TEST(Validation, WeightSum)
{
  auto d = fixtures::table1();
  d.schedule.weights = {0.5, 0.6};
  EXPECT_TRUE(has_rule(validate_dataset(d), Rule::WeightSum));
}

TEST(Validation, ZeroWeightRejected)
{
  auto d = fixtures::table1();
  d.schedule.weights = {1.0, 0.0};
  EXPECT_TRUE(has_rule(validate_dataset(d), Rule::NonPositiveWeight));
}

TEST(Validation, ValueProblems)
{
  auto d = fixtures::table1();
  d.dmus[0].values[0] = -1.0;
  d.dmus[1].values = {0.0, 0.0};
  d.dmus[2].goals = {1.0};
  d.dmus[3].endowment = 0.0;
  d.dmus[4].goals[0] = std::nan("");
  const auto v = validate_dataset(d);
  EXPECT_TRUE(has_rule(v, Rule::NegativeValue, "A"));
  EXPECT_TRUE(has_rule(v, Rule::ZeroValueVector, "B"));
  EXPECT_TRUE(has_rule(v, Rule::GoalsLength, "C"));
  EXPECT_TRUE(has_rule(v, Rule::NonPositiveEndowment, "D"));
  EXPECT_TRUE(has_rule(v, Rule::NonFiniteValue, "E"));
}

TEST(Validation, DuplicateIds)
{
  auto d = fixtures::table1();
  d.dmus[1].id = "A";
  d.indicators[1].id = "y1";
  const auto v = validate_dataset(d);
  EXPECT_TRUE(has_rule(v, Rule::DuplicateDmuId, "A"));
  EXPECT_TRUE(has_rule(v, Rule::DuplicateIndicatorId));
}

TEST(Validation, ZeroCeilingNeedsZeroActual)
{
  auto d = fixtures::table1();
  d.schedule.ceilings = ExplicitCeilings{{{"A", {0.0, 1.0}}, {"Q", {1.0, 1.0}}}};
  const auto v = validate_dataset(d);
  EXPECT_TRUE(has_rule(v, Rule::ZeroCeilingWithPositiveActual, "A"));
  EXPECT_TRUE(has_rule(v, Rule::UnknownDmuInCeilings, "Q"));
}

TEST(Validation, GroupingMustPartition)
{
  auto d = fixtures::table1();
  d.grouping.groups = {{"g1", {"A", "B", "B"}}, {"g2", {}}, {"g3", {"X", "C", "D", "E"}}};
  const auto v = validate_dataset(d);
  EXPECT_TRUE(has_rule(v, Rule::DmuInSeveralGroups, "B"));
  EXPECT_TRUE(has_rule(v, Rule::EmptyGroup));
  EXPECT_TRUE(has_rule(v, Rule::UnknownDmuInGroup, "X"));
  EXPECT_TRUE(has_rule(v, Rule::DmuWithoutGroup, "F"));
}

TEST(Grouping, Builders)
{
  auto d = fixtures::table1();
  for(auto & dmu : d.dmus) dmu.group_id = dmu.id < "D" ? "low" : "high";
  const auto g = grouping_from_group_ids(d.dmus);
  ASSERT_EQ(g.groups.size(), 2u);
  EXPECT_EQ(g.groups[0].id, "low");
  EXPECT_EQ(g.groups[0].members, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(singleton_grouping(d.dmus).groups.size(), 6u);
  const auto all = single_group(d.dmus);
  ASSERT_EQ(all.groups.size(), 1u);
  EXPECT_EQ(all.groups[0].members.size(), 6u);
}
