#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "goalbench/io.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

const char * kDmus = "dmu_id,group_id,endowment,y1,y2\nA,g,25,1,7\nB,g,30,6,5\n";
const char * kGoals = "dmu_id,y1,y2\nA,3,7\nB,5,4\n";
const char * kWeights = "indicator_id,weight\ny1,0.5\ny2,0.5\n";

std::string issues_text(const SchemaError & e)
{
  std::string out;
  for(const auto & issue : e.issues()) out += to_string(issue) + "\n";
  return out;
}

} // namespace

TEST(Csv, QuotesBomAndLineNumbers)
{
  const auto rows = parse_csv("\xEF\xBB\xBF" "a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",2\n", "t.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].cells, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(rows[1].cells, (std::vector<std::string>{"x,1", "say \"hi\""}));
  EXPECT_EQ(rows[1].line, 2u);
  EXPECT_EQ(rows[2].cells[0], "multi\nline");
  EXPECT_EQ(rows[2].line, 4u);
  EXPECT_THROW(parse_csv("\"open", "t.csv"), SchemaError);
}

TEST(CsvDataset, Parses)
{
  const auto d = parse_csv_dataset(kDmus, kGoals, kWeights);
  ASSERT_EQ(d.dmu_count(), 2u);
  EXPECT_EQ(d.dmus[1].values, (std::vector<double>{6, 5}));
  EXPECT_EQ(d.dmus[1].goals, (std::vector<double>{5, 4}));
  EXPECT_EQ(d.schedule.weights, (std::vector<double>{0.5, 0.5}));
  ASSERT_EQ(d.grouping.groups.size(), 1u);
  EXPECT_TRUE(validate_dataset(d).empty());
}

TEST(CsvDataset, GoalColumnsInAnyOrder)
{
  const auto d = parse_csv_dataset(kDmus, "y2,dmu_id,y1\n7,A,3\n4,B,5\n", kWeights);
  EXPECT_EQ(d.dmus[0].goals, (std::vector<double>{3, 7}));
}

TEST(CsvDataset, MissingGoalsNamesTheDmu)
{
  try
  {
    parse_csv_dataset(kDmus, "dmu_id,y1,y2\nA,3,7\n", kWeights);
    FAIL() << "expected SchemaError";
  }
  catch(const SchemaError & e)
  {
    EXPECT_NE(issues_text(e).find("'B'"), std::string::npos) << issues_text(e);
  }
}

TEST(CsvDataset, UnknownDmuInGoals)
{
  try
  {
    parse_csv_dataset(kDmus, "dmu_id,y1,y2\nA,3,7\nB,5,4\nZ,1,1\n", kWeights);
    FAIL() << "expected SchemaError";
  }
  catch(const SchemaError & e)
  {
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].line, 4u);
    EXPECT_NE(e.issues()[0].message.find("'Z'"), std::string::npos);
  }
}

TEST(CsvDataset, NonNumericCellHasLine)
{
  try
  {
    parse_csv_dataset("dmu_id,group_id,endowment,y1,y2\nA,g,25,1,7\nB,g,thirty,6,5\n", kGoals, kWeights);
    FAIL() << "expected SchemaError";
  }
  catch(const SchemaError & e)
  {
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].file, "dmus.csv");
    EXPECT_EQ(e.issues()[0].line, 3u);
  }
}

TEST(CsvDataset, MissingColumn)
{
  EXPECT_THROW(parse_csv_dataset("dmu_id,endowment,y1\nA,1,1\n", "dmu_id,y1\nA,1\n", "indicator_id,weight\ny1,1\n"),
               SchemaError);
  EXPECT_THROW(parse_csv_dataset(kDmus, kGoals, "indicator_id,weight\ny1,0.5\n"), SchemaError);
}

TEST(Load, SixUnitFixture)
{
  const auto d = load_dataset(fixtures::table1_dir());
  EXPECT_EQ(d.dmu_count(), 6u);
  EXPECT_EQ(d.indicator_count(), 2u);
  EXPECT_EQ(d.schedule.weights, (std::vector<double>{0.5, 0.5}));
  const auto typed = fixtures::table1();
  for(std::size_t j = 0; j < 6; ++j)
  {
    EXPECT_EQ(d.dmus[j].values, typed.dmus[j].values);
    EXPECT_EQ(d.dmus[j].goals, typed.dmus[j].goals);
    EXPECT_EQ(d.dmus[j].endowment, typed.dmus[j].endowment);
  }
}

TEST(Load, MissingPath)
{
  try
  {
    read_dataset("/nonexistent/goalbench/data");
    FAIL() << "expected SchemaError";
  }
  catch(const SchemaError & e)
  {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/goalbench/data"), std::string::npos);
  }
}

TEST(Load, ValidationFailure)
{
  const auto dir = std::filesystem::temp_directory_path() / "goalbench_io_bad_weights";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "dmus.csv") << kDmus;
  std::ofstream(dir / "goals.csv") << kGoals;
  std::ofstream(dir / "weights.csv") << "indicator_id,weight\ny1,0.5\ny2,0.6\n";
  try
  {
    load_dataset(dir);
    FAIL() << "expected ValidationFailed";
  }
  catch(const ValidationFailed & e)
  {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0].rule, Rule::WeightSum);
  }
  std::filesystem::remove_all(dir);
}

TEST(Json, RoundTrip)
{
  auto d = fixtures::table1();
  d.schedule.ceilings = ExplicitCeilings{{{"A", {1.0, 2.0}}}};
  d.schedule.weight_overrides["B"] = {0.25, 0.75};
  d.dmus[5].goals[1] = 0.1 + 0.2;
  const auto text = dataset_to_json(d);
  const auto back = parse_dataset_json(text);
  EXPECT_EQ(back, d);
  EXPECT_EQ(dataset_to_json(back), text);
}

TEST(Json, MinimalDocumentDefaultsGrouping)
{
  const auto d = parse_dataset_json(R"({
    "indicators": ["y1"],
    "dmus": [{"id": "a", "group_id": "g", "values": [1], "goals": [2], "endowment": 5},
             {"id": "b", "values": [3], "goals": [2], "endowment": 5}],
    "schedule": {"weights": [1]}
  })");
  ASSERT_EQ(d.grouping.groups.size(), 2u);
  EXPECT_EQ(d.grouping.groups[1].id, "b");
  EXPECT_TRUE(std::holds_alternative<ProportionalToActual>(d.schedule.ceilings));
}

TEST(Json, SchemaErrors)
{
  EXPECT_THROW(parse_dataset_json("{ not json"), SchemaError);
  EXPECT_THROW(parse_dataset_json(R"({"indicators": ["y1"], "dmus": []})"), SchemaError);
  EXPECT_THROW(parse_dataset_json(R"({"indicators": ["y1"], "dmus": [{"id": "a", "values": ["x"], "goals": [1],
    "endowment": 1}], "schedule": {"weights": [1]}})"),
               SchemaError);
}
