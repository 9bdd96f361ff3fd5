#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace goalbench {

/// One performance indicator y_r. Larger values are better.
struct Indicator
{
  std::string id;
  std::string name;
  std::string description;

  bool operator==(const Indicator &) const = default;
};

/// A decision making unit observed in the evaluation period.
///
/// `values` are the period-t indicator levels, `goals` the levels agreed in
/// the planning period, and `endowment` the incentive money available (Q_j).
struct DmuRecord
{
  std::string id;
  std::string group_id;
  std::vector<double> values;
  std::vector<double> goals;
  double endowment = 0.0;

  bool operator==(const DmuRecord &) const = default;
};

/// Default ceilings: no incentive is paid once the shortfall reaches the
/// actual level (d^M_rj = y_rj).
struct ProportionalToActual
{
  bool operator==(const ProportionalToActual &) const = default;
};

/// Ceilings given per DMU id, one entry per indicator.
struct ExplicitCeilings
{
  std::map<std::string, std::vector<double>> by_dmu;

  bool operator==(const ExplicitCeilings &) const = default;
};

using CeilingsMode = std::variant<ProportionalToActual, ExplicitCeilings>;

struct PaymentSchedule
{
  std::vector<double> weights;
  CeilingsMode ceilings = ProportionalToActual{};
  /// Optional per-DMU weight vectors replacing `weights` for that DMU.
  std::map<std::string, std::vector<double>> weight_overrides;

  /// Weight of indicator r for the given DMU.
  double weight(const DmuRecord & dmu, std::size_t r) const;
  /// Deviation ceiling d^M_rj for indicator r of the given DMU.
  double ceiling(const DmuRecord & dmu, std::size_t r) const;

  bool operator==(const PaymentSchedule &) const = default;
};

struct Group
{
  std::string id;
  std::vector<std::string> members;

  bool operator==(const Group &) const = default;
};

/// Partition of the DMUs into G groups J_1 ... J_G.
struct Grouping
{
  std::vector<Group> groups;

  bool operator==(const Grouping &) const = default;
};

struct Dataset
{
  std::vector<Indicator> indicators;
  std::vector<DmuRecord> dmus;
  PaymentSchedule schedule;
  Grouping grouping;

  std::size_t indicator_count() const { return indicators.size(); }
  std::size_t dmu_count() const { return dmus.size(); }

  /// Position of the DMU with the given id, if present.
  std::optional<std::size_t> find_dmu(const std::string & id) const;
  /// Like find_dmu but throws std::out_of_range when the id is unknown.
  const DmuRecord & dmu(const std::string & id) const;

  bool operator==(const Dataset &) const = default;
};

/// Grouping built from the group_id column, groups ordered by first appearance.
Grouping grouping_from_group_ids(const std::vector<DmuRecord> & dmus);
/// One group per DMU, named after the DMU.
Grouping singleton_grouping(const std::vector<DmuRecord> & dmus);
/// All DMUs in a single group called "all".
Grouping single_group(const std::vector<DmuRecord> & dmus);

enum class Rule
{
  NoIndicators,
  DuplicateIndicatorId,
  NoDmus,
  DuplicateDmuId,
  ValuesLength,
  NegativeValue,
  NonFiniteValue,
  ZeroValueVector,
  GoalsLength,
  NegativeGoal,
  NonPositiveEndowment,
  WeightsLength,
  NonPositiveWeight,
  WeightSum,
  CeilingsLength,
  NegativeCeiling,
  ZeroCeilingWithPositiveActual,
  UnknownDmuInCeilings,
  UnknownDmuInOverrides,
  EmptyGroup,
  UnknownDmuInGroup,
  DmuInSeveralGroups,
  DmuWithoutGroup,
};

const char * rule_name(Rule rule);

/// One broken invariant, located by DMU and indicator where that applies.
struct Violation
{
  Rule rule;
  std::string dmu_id;
  std::string indicator_id;
  std::string message;
};

/// Checks every dataset invariant. The result is empty iff the dataset is
/// admissible for analysis.
std::vector<Violation> validate_dataset(const Dataset & dataset);

} // namespace goalbench
