#include <gtest/gtest.h>

#include <random>

#include "goalbench/frontier.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

TEST(Frontier, SixUnitExtremeEfficientSet)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  EXPECT_EQ(e.members, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_TRUE(e.contains("B"));
  EXPECT_FALSE(e.contains("F"));
  EXPECT_EQ(e.matrix[2], (std::vector<double>{9, 1}));
}

TEST(Frontier, SingleDmu)
{
  Dataset d;
  d.indicators = {{"y1", "y1", ""}};
  d.dmus = {{"solo", "g", {3}, {4}, 10}};
  d.schedule.weights = {1.0};
  EXPECT_EQ(extreme_efficient_set(d).members, (std::vector<std::string>{"solo"}));
}

TEST(Frontier, DuplicatesKeepSmallestId)
{
  auto d = fixtures::table1();
  d.dmus.push_back({"AA", "AA", {1, 7}, {1, 7}, 10});
  d.dmus.push_back({"0B", "0B", {6, 5}, {1, 7}, 10});
  const auto e = extreme_efficient_set(d);
  EXPECT_EQ(e.members, (std::vector<std::string>{"A", "C", "0B"}));
}

TEST(Frontier, NonExtremeEfficientPointExcluded)
{
  // (2, 2) is the midpoint of (1, 3) and (3, 1): efficient but not extreme.
  Dataset d;
  d.indicators = {{"y1", "y1", ""}, {"y2", "y2", ""}};
  d.dmus = {{"P", "g", {1, 3}, {1, 1}, 1}, {"Q", "g", {2, 2}, {1, 1}, 1}, {"R", "g", {3, 1}, {1, 1}, 1}};
  d.schedule.weights = {0.5, 0.5};
  EXPECT_EQ(extreme_efficient_set(d).members, (std::vector<std::string>{"P", "R"}));
}

TEST(Membership, SixUnitPoints)
{
  const auto d = fixtures::table1();
  EXPECT_TRUE(as_membership(std::vector<double>{2, 5}, d));
  EXPECT_TRUE(as_membership(std::vector<double>{2, 6.6}, d));
  EXPECT_FALSE(as_membership(std::vector<double>{4, 7}, d));
  EXPECT_FALSE(as_membership(std::vector<double>{3, 7}, d));
  EXPECT_NEAR(attainable_shortfall(std::vector<double>{4, 7}, points_of(d)), 1.2, 1e-9);
}

TEST(ParetoSlack, FrontierPointIsZero)
{
  const auto d = fixtures::table1();
  EXPECT_NEAR(pareto_slack(std::vector<double>{6, 5}, d), 0.0, 1e-9);
  EXPECT_NEAR(pareto_slack(std::vector<double>{2, 6.6}, d), 0.0, 1e-9);
}

TEST(ParetoSlack, InteriorPointReachesB)
{
  // max t1 + t2 over the hull from (2, 5) is attained at B = (6, 5).
  const auto d = fixtures::table1();
  EXPECT_NEAR(pareto_slack(std::vector<double>{2, 5}, d), 4.0, 1e-9);
  EXPECT_NEAR(fixtures::slack_2d({2, 5}, points_of(d)), 4.0, 1e-12);
}

TEST(ParetoSlack, OutsidePointRejected)
{
  const auto d = fixtures::table1();
  EXPECT_THROW(pareto_slack(std::vector<double>{4, 7}, d), PreconditionError);
}

TEST(GoalClass, SixUnitExample)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  EXPECT_EQ(classify_goal(d.dmu("D").goals, e), GoalClass::OutsideAS);
  EXPECT_EQ(classify_goal(d.dmu("E").goals, e), GoalClass::InteriorOfAS);
  EXPECT_EQ(classify_goal(d.dmu("F").goals, e), GoalClass::OnParetoFrontier);
  EXPECT_EQ(classify_goal(d.dmu("A").goals, e), GoalClass::OutsideAS);
  EXPECT_EQ(classify_goal(d.dmu("B").goals, e), GoalClass::InteriorOfAS);
}

// Random 2-D clouds against a monotone-chain hull.
TEST(Frontier, AgreesWithPlanarHull)
{
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> level(0, 12);
  for(int trial = 0; trial < 60; ++trial)
  {
    Dataset d;
    d.indicators = {{"y1", "y1", ""}, {"y2", "y2", ""}};
    d.schedule.weights = {0.5, 0.5};
    const int n = 2 + trial % 9;
    for(int j = 0; j < n; ++j)
    {
      double a = level(rng);
      double b = level(rng);
      if(a == 0 && b == 0) a = 1;
      d.dmus.push_back({"u" + std::to_string(10 + j), "g", {a, b}, {a, b}, 1});
    }
    d.grouping = single_group(d.dmus);

    const auto pts = points_of(d);
    auto hull = fixtures::hull_frontier_2d(pts);
    std::vector<std::string> expected;
    for(const auto & dmu : d.dmus)
    {
      const auto j = *d.find_dmu(dmu.id);
      if(std::find(hull.begin(), hull.end(), j) != hull.end()) expected.push_back(dmu.id);
    }
    std::string cloud;
    for(const auto & y : pts) cloud += "(" + std::to_string(y[0]) + "," + std::to_string(y[1]) + ") ";
    EXPECT_EQ(extreme_efficient_set(d).members, expected) << "trial " << trial << ": " << cloud;

    for(int probe = 0; probe < 5; ++probe)
    {
      const std::vector<double> p{level(rng) * 0.5, level(rng) * 0.5};
      const double reference = fixtures::slack_2d(p, pts);
      if(reference < 0)
        EXPECT_FALSE(as_membership(p, pts));
      else
        EXPECT_NEAR(pareto_slack(p, pts), reference, 1e-7) << cloud << " probe " << p[0] << "," << p[1];
    }
  }
}
