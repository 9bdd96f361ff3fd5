#include <gtest/gtest.h>

#include "goalbench/oracle.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

TEST(OracleFacets, SixUnitHasTwoFacets)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  const auto facets = oracle::enumerate_facets(e, d);
  ASSERT_EQ(facets.size(), 2u);
  EXPECT_EQ(facets[0].spanning_ids, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(facets[1].spanning_ids, (std::vector<std::string>{"B", "C"}));

  // A-B: y2 = 7.4 - 0.4 y1; B-C: y2 = 13 - 4/3 y1.
  const auto & ab = facets[0];
  EXPECT_NEAR(ab.normal[0] / ab.normal[1], 0.4, 1e-9);
  EXPECT_NEAR(-ab.offset / ab.normal[1], 7.4, 1e-9);
  const auto & bc = facets[1];
  EXPECT_NEAR(bc.normal[0] / bc.normal[1], 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(-bc.offset / bc.normal[1], 13.0, 1e-9);
  for(const auto & f : facets)
  {
    for(double u : f.normal) EXPECT_GE(u, 1.0 - 1e-9);
  }
}

TEST(OracleFacets, SinglePoint)
{
  Dataset d;
  d.indicators = {{"y1", "y1", ""}, {"y2", "y2", ""}};
  d.dmus = {{"P", "g", {2, 3}, {2, 3}, 1}};
  d.schedule.weights = {0.5, 0.5};
  const auto facets = oracle::enumerate_facets(extreme_efficient_set(d), d);
  ASSERT_EQ(facets.size(), 1u);
  EXPECT_EQ(facets[0].spanning_ids, (std::vector<std::string>{"P"}));
}

TEST(OracleSolve, SixUnitSingletons)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  const std::pair<const char *, double> expected[] = {{"A", 0.0}, {"B", 0.0}, {"C", 0.0},
                                                      {"D", 0.3}, {"E", 0.3}, {"F", 0.0}};
  for(const auto & [id, value] : expected)
  {
    const auto r = oracle::solve_group(Group{id, {id}}, d, e);
    EXPECT_NEAR(r.objective, value, 1e-9) << id;
  }
  const auto rd = oracle::solve_group(Group{"D", {"D"}}, d, e);
  EXPECT_NEAR(rd.targets[0][0], 4.0, 1e-7);
  EXPECT_NEAR(rd.targets[0][1], 5.8, 1e-7);
  EXPECT_EQ(rd.facet, (std::vector<std::string>{"A", "B"}));
}

TEST(OracleSolve, SingleGroupPicksBestFacet)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  const auto r = oracle::solve_group(single_group(d.dmus).groups[0], d, e);
  EXPECT_EQ(r.facet, (std::vector<std::string>{"A", "B"}));
  // On A-B the contributions are A 0, B 0, C 0 (target at B), D 0.3, F 0
  // and E 0.5: any point of A-B has y2 >= 5, so E's y2 rate drops to 0 while
  // its goal rate is 0.5. B-C costs F at least 1.32.
  EXPECT_NEAR(r.objective, 0.8, 1e-9);
}

TEST(OracleGuards, RefusesLargeInstances)
{
  auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  Group big{"big", {"A", "B", "C", "D", "E", "F", "A"}};
  EXPECT_FALSE(oracle::within_guards(big, d, e));
  EXPECT_THROW(oracle::solve_group(big, d, e), oracle::GuardError);
  EXPECT_TRUE(oracle::within_guards(Group{"x", {"A", "B"}}, d, e));
}
