#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "goalbench/io.hpp"
#include "goalbench/report.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

Analysis singletons(const Dataset & d)
{
  EngineSettings settings;
  settings.grouping_mode = GroupingMode::Singletons;
  return run_analysis(d, settings);
}

std::vector<std::string> lines_of(const std::string & text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for(std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// The three rows printed for `id` (the Actual row starts with the id).
std::vector<std::string> rows_for(const std::string & text, const std::string & id)
{
  const auto lines = lines_of(text);
  for(std::size_t i = 0; i + 2 < lines.size(); ++i)
  {
    if(lines[i].rfind(id + " ", 0) == 0 && lines[i].find("Actual") != std::string::npos)
      return {lines[i], lines[i + 1], lines[i + 2]};
  }
  return {};
}

std::vector<std::string> fields(const std::string & line)
{
  std::vector<std::string> out;
  std::istringstream in(line);
  for(std::string f; in >> f;) out.push_back(f);
  return out;
}

} // namespace

TEST(Report, SixUnitTextRowsForD)
{
  const auto d = fixtures::table1();
  const auto a = singletons(d);
  const auto text = render_report(a.groups, d, ReportFormat::Text);
  const auto rows = rows_for(text, "D");
  ASSERT_EQ(rows.size(), 3u) << text;
  EXPECT_EQ(fields(rows[0]), (std::vector<std::string>{"D", "Actual", "3", "4", "|", "Available", "10.00", "10.00", "20.00"}));
  EXPECT_EQ(fields(rows[1]),
            (std::vector<std::string>{"Targets", "4", "5.8", "|", "Targets", "6.67", "5.50", "12.17", "60.8%"}));
  EXPECT_EQ(fields(rows[2]),
            (std::vector<std::string>{"Goals*", "4", "7", "|", "Goals", "6.67", "2.50", "9.17", "45.8%"}));
  EXPECT_NE(text.find("* Goals outside the attainable set."), std::string::npos);
  EXPECT_EQ(text.find("-0.00"), std::string::npos);
}

TEST(Report, InteriorGoalsHaveNoAsterisk)
{
  const auto d = fixtures::table1();
  const auto text = render_report(singletons(d).groups, d, ReportFormat::Text);
  const auto rows = rows_for(text, "E");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(fields(rows[2])[0], "Goals");
}

TEST(Report, EmptyDocuments)
{
  const Dataset empty;
  const std::vector<GroupSolution> none;
  const auto json = render_report(none, empty, ReportFormat::Json);
  const auto parsed = parse_report_json(json);
  EXPECT_TRUE(parsed.dmus.empty());
  EXPECT_TRUE(parsed.groups.empty());
  EXPECT_EQ(lines_of(render_report(none, empty, ReportFormat::Csv)).size(), 1u);
  EXPECT_EQ(render_report(none, empty, ReportFormat::Text), "No results.\n");
}

TEST(Report, JsonRoundTripIsByteIdentical)
{
  const auto d = fixtures::table1();
  for(auto mode : {GroupingMode::Singletons, GroupingMode::SingleGroup})
  {
    EngineSettings settings;
    settings.grouping_mode = mode;
    const auto a = run_analysis(d, settings);
    const auto json = render_report(a.groups, d, ReportFormat::Json);
    const auto report = parse_report_json(json);
    EXPECT_EQ(report, make_report(a.groups, d));
    EXPECT_EQ(render_report(report, ReportFormat::Json), json);
  }
}

TEST(Report, CsvMatchesJson)
{
  const auto d = fixtures::table1();
  const auto report = make_report(singletons(d).groups, d);
  const auto csv = render_report(report, ReportFormat::Csv);
  const auto rows = parse_csv(csv, "report.csv");
  ASSERT_EQ(rows.size(), 1 + 3 * report.dmus.size());
  const auto & header = rows[0].cells;
  auto col = [&](const std::string & name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  auto value = [&](std::size_t row, const std::string & name) { return std::strtod(rows[row].cells[col(name)].c_str(), nullptr); };
  for(std::size_t i = 0; i < report.dmus.size(); ++i)
  {
    const auto & dmu = report.dmus[i];
    const std::size_t actual = 1 + 3 * i;
    EXPECT_EQ(rows[actual].cells[col("dmu_id")], dmu.id);
    EXPECT_EQ(value(actual, "total"), dmu.endowment);
    EXPECT_EQ(value(actual + 1, "y2"), dmu.target[1]);
    EXPECT_EQ(value(actual + 1, "pay_y1"), dmu.pay_targets[0]);
    EXPECT_EQ(value(actual + 1, "rate"), dmu.rate_targets);
    EXPECT_EQ(value(actual + 2, "total"), dmu.total_goals);
    EXPECT_EQ(value(actual + 2, "rate_y2"), dmu.indicator_rate_goals[1]);
  }
}

TEST(Report, FieldInvariants)
{
  const auto d = fixtures::table1();
  const auto report = make_report(singletons(d).groups, d);
  ASSERT_EQ(report.dmus.size(), 6u);
  for(const auto & dmu : report.dmus)
  {
    EXPECT_LE(dmu.total_targets, dmu.endowment + 1e-9);
    for(double rate : {dmu.rate_targets, dmu.rate_goals})
    {
      EXPECT_GE(rate, 0.0);
      EXPECT_LE(rate, 100.0 + 1e-9);
    }
    for(std::size_t r = 0; r < 2; ++r)
    {
      EXPECT_GE(dmu.indicator_rate_targets[r], 0.0);
      EXPECT_LE(dmu.indicator_rate_targets[r], 100.0 + 1e-9);
    }
    EXPECT_EQ(dmu.reference_set.empty(), false);
  }
}

TEST(Report, FailedGroupStillListsGoals)
{
  auto d = fixtures::table1();
  GroupSolution failed;
  failed.group_id = "x";
  failed.members = {"D"};
  failed.status = SolveStatus::TimeLimit;
  failed.message = "time limit reached";
  const auto report = make_report({failed}, d);
  ASSERT_EQ(report.dmus.size(), 1u);
  EXPECT_FALSE(report.dmus[0].has_targets());
  EXPECT_NEAR(report.dmus[0].total_goals, 9.1667, 1e-4);
  const auto text = render_report(report, ReportFormat::Text);
  EXPECT_NE(text.find("TimeLimit"), std::string::npos);
  EXPECT_NE(text.find("time limit reached"), std::string::npos);
  const auto json = render_report(report, ReportFormat::Json);
  EXPECT_EQ(render_report(parse_report_json(json), ReportFormat::Json), json);
}

TEST(Report, FormatNames)
{
  EXPECT_EQ(parse_format("csv"), ReportFormat::Csv);
  EXPECT_FALSE(parse_format("xlsx").has_value());
}
