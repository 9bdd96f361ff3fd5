#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goalbench/benchmarking.hpp"
#include "goalbench/domain.hpp"

namespace goalbench {

enum class ReportFormat
{
  Json,
  Csv,
  Text,
};

const char * format_name(ReportFormat format);
std::optional<ReportFormat> parse_format(std::string_view name);

// Everything a rendered report shows. Money is in endowment units, rates are
// percentages. Vectors are indexed by indicator; `target` and the
// target-based payments are empty when the group has no solution.
struct DmuReport
{
  std::string id;
  std::string group_id;
  double endowment = 0.0;
  std::vector<double> actual;
  std::vector<double> target;
  std::vector<double> goals;
  std::vector<double> available; ///< Q * w_r
  std::vector<double> pay_targets;
  std::vector<double> pay_goals;
  double total_targets = 0.0;
  double total_goals = 0.0;
  double rate_targets = 0.0;
  double rate_goals = 0.0;
  std::vector<double> indicator_rate_targets;
  std::vector<double> indicator_rate_goals;
  /// Unknown when the group failed before classification.
  std::optional<GoalClass> goal_class;
  std::vector<std::string> reference_set;

  bool has_targets() const { return !target.empty(); }
  bool operator==(const DmuReport &) const = default;
};

struct GroupReport
{
  std::string id;
  std::string status;
  std::vector<std::string> members;
  std::vector<std::string> reference_set;
  std::vector<double> normal;
  double offset = 0.0;
  double objective = 0.0;
  double audited_objective = 0.0;
  std::vector<std::string> warnings;
  std::string message;

  bool operator==(const GroupReport &) const = default;
};

struct PaymentReport
{
  std::vector<std::string> indicators;
  std::vector<GroupReport> groups;
  std::vector<DmuReport> dmus;

  bool operator==(const PaymentReport &) const = default;
};

/// Collects report rows for every DMU covered by `solutions`, in dataset
/// order. DMUs of a group without targets keep actual and goal payments.
PaymentReport make_report(const std::vector<GroupSolution> & solutions, const Dataset & dataset);

std::string render_report(const PaymentReport & report, ReportFormat format);
std::string render_report(const std::vector<GroupSolution> & solutions, const Dataset & dataset, ReportFormat format);

/// Inverse of the JSON rendering. Throws std::invalid_argument on malformed
/// input.
PaymentReport parse_report_json(std::string_view text);

} // namespace goalbench
