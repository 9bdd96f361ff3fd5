#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "Highs.h"
#include "goalbench/solver.hpp"

using namespace goalbench;

TEST(LinearProgram, TrivialLp)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, kInf, 1.0);
  lp.add_row("floor", {{x, 1.0}}, 3.0, kInf);
  const auto result = make_backend("highs")->solve(lp, {});
  ASSERT_TRUE(result.optimal());
  EXPECT_NEAR(result.values[x], 3.0, 1e-9);
  EXPECT_NEAR(result.objective, 3.0, 1e-9);
  EXPECT_LE(lp.max_violation(result.values), 1e-9);
}

TEST(LinearProgram, Infeasible)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, 1.0, 1.0);
  lp.add_row("floor", {{x, 1.0}}, 3.0, kInf);
  EXPECT_EQ(make_backend("highs")->solve(lp, {}).status, SolveStatus::Infeasible);
}

TEST(LinearProgram, Unbounded)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, kInf, -1.0);
  lp.add_row("floor", {{x, 1.0}}, 1.0, kInf);
  const auto status = make_backend("highs")->solve(lp, {}).status;
  EXPECT_TRUE(status == SolveStatus::Unbounded || status == SolveStatus::Infeasible) << status_name(status);
}

TEST(LinearProgram, ViolationMeasures)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, 2.0);
  const int b = lp.add_binary("b");
  lp.add_row("r", {{x, 1.0}, {b, 1.0}}, 1.0, 1.0);
  lp.add_sos1({x, b});
  EXPECT_NEAR(lp.max_violation(std::vector<double>{1.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(lp.max_violation(std::vector<double>{0.5, 0.0}), 0.5, 1e-15);
  EXPECT_NEAR(lp.max_violation(std::vector<double>{3.0, -2.0}), 2.0, 1e-15);
  EXPECT_NEAR(lp.max_violation(std::vector<double>{0.6, 0.4}), 0.4, 1e-15);
  EXPECT_NEAR(lp.max_sos1_violation(std::vector<double>{0.6, 0.4}), 0.4, 1e-15);
  EXPECT_EQ(lp.max_sos1_violation(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_TRUE(lp.has_binaries());
}

// max x + y with x, y in [0, 1] and at most one of them nonzero.
TEST(Sos1, EnforcesExclusivity)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, 1.0, -1.0);
  const int y = lp.add_variable("y", 0.0, 1.0, -1.5);
  const int z = lp.add_variable("z", 0.0, 1.0, -0.5);
  lp.add_sos1({x, y});
  const auto result = make_backend("highs")->solve(lp, {});
  ASSERT_TRUE(result.optimal());
  EXPECT_NEAR(result.objective, -2.0, 1e-9);
  EXPECT_NEAR(result.values[y], 1.0, 1e-9);
  EXPECT_NEAR(result.values[x], 0.0, 1e-9);
  EXPECT_NEAR(result.values[z], 1.0, 1e-9);
}

TEST(Sos1, SeveralOverlappingSets)
{
  // Three items, pairwise exclusive on (a, b) and (b, c); best is a + c.
  LinearProgram lp;
  const int a = lp.add_variable("a", 0.0, 1.0, -2.0);
  const int b = lp.add_variable("b", 0.0, 1.0, -3.0);
  const int c = lp.add_variable("c", 0.0, 1.0, -2.0);
  lp.add_sos1({a, b});
  lp.add_sos1({b, c});
  const auto result = make_backend("highs")->solve(lp, {});
  ASSERT_TRUE(result.optimal());
  EXPECT_NEAR(result.objective, -4.0, 1e-9);
  EXPECT_LE(lp.max_sos1_violation(result.values), 1e-9);
}

TEST(Sos1, BigMBackendRefusesSos)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, 1.0, -1.0);
  const int y = lp.add_variable("y", 0.0, 1.0, -1.0);
  lp.add_sos1({x, y});
  auto backend = make_backend("highs-bigm");
  EXPECT_FALSE(backend->capabilities().supports_sos1);
  EXPECT_EQ(backend->solve(lp, {}).status, SolveStatus::Error);
}

TEST(Backends, Registry)
{
  const auto ids = backend_ids();
  EXPECT_NE(std::find(ids.begin(), ids.end(), "highs"), ids.end());
  EXPECT_THROW(make_backend("no-such-solver"), std::invalid_argument);
}

TEST(Milp, KnapsackWithBinaries)
{
  LinearProgram lp;
  std::vector<int> items;
  const double value[] = {10, 13, 7, 8};
  const double weight[] = {5, 6, 3, 4};
  std::vector<Term> cap;
  for(int i = 0; i < 4; ++i)
  {
    items.push_back(lp.add_binary("item" + std::to_string(i), -value[i]));
    cap.push_back({items.back(), weight[i]});
  }
  lp.add_row("capacity", cap, -kInf, 10.0);
  const auto result = make_backend("highs")->solve(lp, {});
  ASSERT_TRUE(result.optimal());
  EXPECT_NEAR(result.objective, -21.0, 1e-9);
}

TEST(LpFile, WrittenModelSolvesToSameOptimum)
{
  LinearProgram lp;
  const int x = lp.add_variable("x[1]", 0.0, 4.0, -3.0);
  const int y = lp.add_variable("y", -kInf, kInf, -2.0);
  const int b = lp.add_binary("b", 1.0);
  lp.add_row("mix", {{x, 1.0}, {y, 1.0}}, -kInf, 5.0);
  lp.add_row("band", {{x, 1.0}, {y, -1.0}}, -1.0, 3.0);
  lp.add_row("link", {{y, 1.0}, {b, -10.0}}, -kInf, 0.0);
  const auto direct = make_backend("highs")->solve(lp, {});
  ASSERT_TRUE(direct.optimal());

  const auto path = std::filesystem::temp_directory_path() / "goalbench_lpfile_test.lp";
  {
    std::ofstream out(path);
    lp.write_lp(out);
  }
  Highs highs;
  highs.setOptionValue("output_flag", false);
  ASSERT_EQ(highs.readModel(path.string()), HighsStatus::kOk);
  ASSERT_EQ(highs.run(), HighsStatus::kOk);
  ASSERT_EQ(highs.getModelStatus(), HighsModelStatus::kOptimal);
  EXPECT_NEAR(highs.getInfo().objective_function_value, direct.objective, 1e-9);
  std::filesystem::remove(path);
}

TEST(LpFile, ContainsSections)
{
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, kInf, 1.0);
  const int y = lp.add_variable("y", -kInf, kInf);
  lp.add_binary("b");
  lp.add_row("r", {{x, 1.0}, {y, 2.0}}, 1.0, 2.0);
  lp.add_sos1({x, y});
  std::ostringstream os;
  lp.write_lp(os);
  const auto text = os.str();
  for(const char * section : {"Minimize", "Subject To", "Bounds", "Binaries", "SOS", "End"})
    EXPECT_NE(text.find(section), std::string::npos) << section;
  EXPECT_NE(text.find("y free"), std::string::npos);
}
