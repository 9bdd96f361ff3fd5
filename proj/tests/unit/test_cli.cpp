#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "goalbench/cli.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture()
{
  return fixtures::table1_dir().string();
}

std::filesystem::path scratch(const std::string & name)
{
  auto dir = std::filesystem::temp_directory_path() / ("goalbench_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST(Cli, ValidateFixture)
{
  const auto r = run({"validate", "--data", fixture()});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ValidateMissingPath)
{
  const auto r = run({"validate", "--data", "/nonexistent/table"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/nonexistent/table"), std::string::npos);
}

TEST(Cli, ValidateWeightSum)
{
  const auto dir = scratch("weights");
  for(const char * f : {"dmus.csv", "goals.csv"}) std::filesystem::copy_file(fixtures::table1_dir() / f, dir / f);
  std::ofstream(dir / "weights.csv") << "indicator_id,weight\ny1,0.5\ny2,0.6\n";
  const auto r = run({"validate", "--data", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("weight-sum"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"evaluate"}).code, 2);
  EXPECT_EQ(run({"evaluate", "--data", fixture(), "--format", "xlsx"}).code, 2);
  EXPECT_EQ(run({"evaluate", "--help"}).code, 0);
}

TEST(Cli, FrontierListsEfficientSetAndClasses)
{
  const auto r = run({"frontier", "--data", fixture()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("E = {A, B, C}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("OutsideAS"), std::string::npos);
  EXPECT_NE(r.out.find("OnParetoFrontier"), std::string::npos);
}

TEST(Cli, FrontierSingleDmu)
{
  const auto dir = scratch("single");
  std::ofstream(dir / "dmus.csv") << "dmu_id,group_id,endowment,y1\nonly,g,10,4\n";
  std::ofstream(dir / "goals.csv") << "dmu_id,y1\nonly,5\n";
  std::ofstream(dir / "weights.csv") << "indicator_id,weight\ny1,1\n";
  const auto r = run({"frontier", "--data", dir.string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"efficient_set\": [\"only\"]"), std::string::npos) << r.out;
}

TEST(Cli, EvaluateSingletonsWithOracleCheck)
{
  const auto r = run({"evaluate", "--data", fixture(), "--grouping", "singletons", "--format", "text", "--oracle-check"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("12.17"), std::string::npos);
  EXPECT_EQ(r.err.find("MISMATCH"), std::string::npos);
}

TEST(Cli, EvaluateSingleGroupNotesCommonFacet)
{
  const auto r = run({"evaluate", "--data", fixture(), "--grouping", "single-group"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("reference set: A, B"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("same facet"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic)
{
  const std::vector<std::string> args{"evaluate", "--data", fixture(), "--grouping", "singletons", "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutFileAndDumpLp)
{
  const auto dir = scratch("out");
  const auto r = run({"evaluate", "--data", fixture(), "--grouping", "singletons", "--format", "csv", "--out",
                      (dir / "report.csv").string(), "--dump-lp", (dir / "lp").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "report.csv"));
  for(const char * id : {"A", "B", "C", "D", "E", "F"})
    EXPECT_TRUE(std::filesystem::exists(dir / "lp" / (std::string(id) + ".lp"))) << id;
}

TEST(Cli, EnvironmentOverrides)
{
  ::setenv("GOALBENCH_GROUPING", "single-group", 1);
  ::setenv("GOALBENCH_FORMAT", "csv", 1);
  const auto r = run({"evaluate", "--data", fixture()});
  ::unsetenv("GOALBENCH_GROUPING");
  ::unsetenv("GOALBENCH_FORMAT");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("group_id,dmu_id", 0), 0u);
  EXPECT_NE(r.out.find("\nall,A,actual"), std::string::npos);
}

TEST(Cli, NoSos1StillAgreesWithOracle)
{
  const auto r = run({"evaluate", "--data", fixture(), "--grouping", "singletons", "--no-sos1", "--oracle-check"});
  EXPECT_EQ(r.code, 0) << r.err;
}
