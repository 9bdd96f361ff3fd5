#include <gtest/gtest.h>

#include "goalbench/benchmarking.hpp"
#include "goalbench/oracle.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

GroupSolution solve_single(const Dataset & d, const std::string & id, EngineSettings settings = {})
{
  const auto e = extreme_efficient_set(d, settings);
  const Group group{id, {id}};
  return solve_group(build_problem(group, d, e, settings), d, settings);
}

void expect_target(const GroupSolution & g, std::vector<double> expected)
{
  ASSERT_TRUE(g.optimal()) << g.message;
  ASSERT_EQ(g.dmus.size(), 1u);
  for(std::size_t r = 0; r < expected.size(); ++r) EXPECT_NEAR(g.dmus[0].target[r], expected[r], 1e-6) << r;
}

} // namespace

TEST(Benchmarking, UnitDUnattainableGoals)
{
  const auto g = solve_single(fixtures::table1(), "D");
  EXPECT_NEAR(g.objective, 0.3, 1e-7);
  expect_target(g, {4, 5.8});
  EXPECT_NEAR(g.dmus[0].vs_targets.total, 12.1667, 1e-4);
  EXPECT_NEAR(g.dmus[0].vs_goals.total, 9.1667, 1e-4);
  EXPECT_EQ(g.reference_set, (std::vector<std::string>{"A", "B"}));
}

TEST(Benchmarking, UnitEUnambitiousGoals)
{
  const auto g = solve_single(fixtures::table1(), "E");
  EXPECT_NEAR(g.objective, 0.3, 1e-7);
  expect_target(g, {7.5, 3});
  EXPECT_NEAR(g.dmus[0].vs_targets.total, 12.5, 1e-6);
  EXPECT_EQ(g.reference_set, (std::vector<std::string>{"B", "C"}));
}

TEST(Benchmarking, UnitFGoalsOnFrontier)
{
  const auto g = solve_single(fixtures::table1(), "F");
  EXPECT_NEAR(g.objective, 0.0, 1e-7);
  expect_target(g, {2, 6.6});
  EXPECT_NEAR(g.dmus[0].vs_targets.total, 16.8, 1e-6);
}

TEST(Benchmarking, EfficientUnits)
{
  const auto d = fixtures::table1();
  expect_target(solve_single(d, "A"), {2, 6.6});
  expect_target(solve_single(d, "B"), {6, 5});
  expect_target(solve_single(d, "C"), {8.25, 2});
}

TEST(Benchmarking, AlternateOptimaKeepObjective)
{
  EngineSettings settings;
  settings.tie_break = false;
  const auto d = fixtures::table1();
  for(const char * id : {"A", "C"})
  {
    const auto g = solve_single(d, id, settings);
    ASSERT_TRUE(g.optimal());
    EXPECT_NEAR(g.objective, 0.0, 1e-7) << id;
    EXPECT_NEAR(g.dmus[0].vs_targets.total, g.dmus[0].vs_goals.total, 1e-6) << id;
  }
}

TEST(Benchmarking, EmptyGroupRejected)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  EXPECT_THROW(build_problem(Group{"none", {}}, d, e), BuildError);
  EXPECT_THROW(build_problem(Group{"ghost", {"Z"}}, d, e), BuildError);
}

TEST(Benchmarking, ProblemShape)
{
  const auto d = fixtures::table1();
  const auto e = extreme_efficient_set(d);
  const auto p = build_problem(Group{"all", {"A", "B", "C", "D", "E", "F"}}, d, e);
  EXPECT_TRUE(p.uses_sos1);
  EXPECT_EQ(p.lambda.size(), 3u);
  EXPECT_EQ(p.lambda[0].size(), 6u);
  EXPECT_EQ(p.lp.sos1_sets().size(), 3u);
  EXPECT_EQ(p.upper_reach, (std::vector<double>{9, 7}));
  EXPECT_NEAR(p.goal_rate[3][0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.goal_rate[3][1], 0.25, 1e-12);
}

TEST(Benchmarking, BigMFallbackAgrees)
{
  const auto d = fixtures::table1();
  EngineSettings sos;
  EngineSettings bigm;
  bigm.use_sos1 = false;
  for(auto mode : {GroupingMode::Singletons, GroupingMode::SingleGroup})
  {
    sos.grouping_mode = bigm.grouping_mode = mode;
    const auto a = run_analysis(d, sos);
    const auto b = run_analysis(d, bigm);
    ASSERT_EQ(a.groups.size(), b.groups.size());
    for(std::size_t g = 0; g < a.groups.size(); ++g)
    {
      ASSERT_TRUE(b.groups[g].optimal()) << b.groups[g].message;
      EXPECT_NEAR(a.groups[g].objective, b.groups[g].objective, 1e-6);
      EXPECT_FALSE(b.groups[g].warnings.empty());
    }
  }
}

TEST(Benchmarking, BigMBackendForcesFallback)
{
  EngineSettings settings;
  settings.solver = "highs-bigm";
  settings.grouping_mode = GroupingMode::Singletons;
  const auto a = run_analysis(fixtures::table1(), settings);
  ASSERT_TRUE(a.all_optimal());
  EXPECT_NEAR(a.groups[3].objective, 0.3, 1e-6);
}

TEST(Benchmarking, SingleGroupSharesOneFacet)
{
  EngineSettings settings;
  settings.grouping_mode = GroupingMode::SingleGroup;
  const auto d = fixtures::table1();
  const auto a = run_analysis(d, settings);
  ASSERT_EQ(a.groups.size(), 1u);
  const auto & g = a.groups[0];
  ASSERT_TRUE(g.optimal());
  const auto reference = oracle::solve_group(a.grouping.groups[0], d, a.efficient);
  EXPECT_NEAR(g.objective, reference.objective, 1e-6);
  for(const auto & outcome : g.dmus)
    EXPECT_NEAR(g.hyperplane.evaluate(outcome.target), 0.0, 1e-6) << outcome.id;
  for(const auto & id : g.reference_set)
    EXPECT_NEAR(g.hyperplane.evaluate(d.dmu(id).values), 0.0, 1e-6) << id;
}

TEST(Benchmarking, AuditMatchesObjective)
{
  EngineSettings settings;
  settings.grouping_mode = GroupingMode::Singletons;
  const auto a = run_analysis(fixtures::table1(), settings);
  for(const auto & g : a.groups) EXPECT_NEAR(g.objective, g.audited_objective, 1e-6) << g.group_id;
}

TEST(Benchmarking, ParallelGroupsMatchSequential)
{
  EngineSettings one;
  one.grouping_mode = GroupingMode::Singletons;
  EngineSettings many = one;
  many.jobs = 4;
  const auto d = fixtures::table1();
  const auto a = run_analysis(d, one);
  const auto b = run_analysis(d, many);
  ASSERT_EQ(a.groups.size(), b.groups.size());
  for(std::size_t g = 0; g < a.groups.size(); ++g)
  {
    EXPECT_EQ(a.groups[g].group_id, b.groups[g].group_id);
    EXPECT_EQ(a.groups[g].objective, b.groups[g].objective);
    EXPECT_EQ(a.groups[g].dmus[0].target, b.groups[g].dmus[0].target);
  }
}

TEST(Benchmarking, ZeroActualLevel)
{
  // G has nothing on y2, so its ceiling there is 0 and the payment a step.
  auto d = fixtures::table1();
  d.dmus.push_back({"G", "G", {4, 0}, {5, 1}, 10});
  d.grouping = grouping_from_group_ids(d.dmus);
  EngineSettings settings;
  const auto e = extreme_efficient_set(d, settings);
  const Group group{"G", {"G"}};
  const auto g = solve_group(build_problem(group, d, e, settings), d, settings);
  ASSERT_TRUE(g.optimal()) << g.message;
  const auto reference = oracle::solve_group(group, d, e, settings);
  EXPECT_NEAR(g.objective, reference.objective, 1e-6);
  EXPECT_NEAR(g.objective, g.audited_objective, 1e-6);
}

TEST(Benchmarking, ExplicitCeilings)
{
  auto d = fixtures::table1();
  d.schedule.ceilings = ExplicitCeilings{{{"D", {2.0, 6.0}}, {"E", {0.5, 0.5}}}};
  EngineSettings settings;
  const auto e = extreme_efficient_set(d, settings);
  for(const char * id : {"D", "E"})
  {
    const Group group{id, {id}};
    const auto g = solve_group(build_problem(group, d, e, settings), d, settings);
    ASSERT_TRUE(g.optimal()) << g.message;
    EXPECT_NEAR(g.objective, oracle::solve_group(group, d, e, settings).objective, 1e-6) << id;
    EXPECT_NEAR(g.objective, g.audited_objective, 1e-6) << id;
  }
}

TEST(Benchmarking, FailedGroupDoesNotStopOthers)
{
  auto d = fixtures::table1();
  d.grouping.groups = {{"ok", {"A", "B", "C", "D", "E", "F"}}, {"broken", {"nobody"}}};
  const auto a = run_analysis(d, {});
  ASSERT_EQ(a.groups.size(), 2u);
  EXPECT_TRUE(a.groups[0].optimal());
  EXPECT_FALSE(a.groups[1].optimal());
  EXPECT_FALSE(a.groups[1].message.empty());
  EXPECT_FALSE(a.all_optimal());
}

TEST(Settings, RejectsNonPositiveTolerances)
{
  EngineSettings s;
  s.feasibility_tol = 0.0;
  EXPECT_THROW(check_settings(s), std::invalid_argument);
  s = {};
  s.efficiency_tol = -1.0;
  EXPECT_THROW(check_settings(s), std::invalid_argument);
}
