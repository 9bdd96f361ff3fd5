#include "goalbench/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace goalbench {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

std::string describe(const std::string & what, double value)
{
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

} // namespace

double PaymentSchedule::weight(const DmuRecord & dmu, std::size_t r) const
{
  if(auto it = weight_overrides.find(dmu.id); it != weight_overrides.end()) return it->second.at(r);
  return weights.at(r);
}

double PaymentSchedule::ceiling(const DmuRecord & dmu, std::size_t r) const
{
  if(const auto * explicit_ceilings = std::get_if<ExplicitCeilings>(&ceilings))
  {
    if(auto it = explicit_ceilings->by_dmu.find(dmu.id); it != explicit_ceilings->by_dmu.end())
      return it->second.at(r);
  }
  return dmu.values.at(r);
}

std::optional<std::size_t> Dataset::find_dmu(const std::string & id) const
{
  for(std::size_t j = 0; j < dmus.size(); ++j)
  {
    if(dmus[j].id == id) return j;
  }
  return std::nullopt;
}

const DmuRecord & Dataset::dmu(const std::string & id) const
{
  auto j = find_dmu(id);
  if(!j) throw std::out_of_range("unknown DMU id '" + id + "'");
  return dmus[*j];
}

Grouping grouping_from_group_ids(const std::vector<DmuRecord> & dmus)
{
  Grouping grouping;
  for(const auto & dmu : dmus)
  {
    auto it = std::find_if(grouping.groups.begin(), grouping.groups.end(),
                           [&](const Group & g) { return g.id == dmu.group_id; });
    if(it == grouping.groups.end())
      grouping.groups.push_back({dmu.group_id, {dmu.id}});
    else
      it->members.push_back(dmu.id);
  }
  return grouping;
}

Grouping singleton_grouping(const std::vector<DmuRecord> & dmus)
{
  Grouping grouping;
  for(const auto & dmu : dmus) grouping.groups.push_back({dmu.id, {dmu.id}});
  return grouping;
}

Grouping single_group(const std::vector<DmuRecord> & dmus)
{
  Group all{"all", {}};
  for(const auto & dmu : dmus) all.members.push_back(dmu.id);
  Grouping grouping;
  if(!all.members.empty()) grouping.groups.push_back(std::move(all));
  return grouping;
}

const char * rule_name(Rule rule)
{
  switch(rule)
  {
    case Rule::NoIndicators: return "no-indicators";
    case Rule::DuplicateIndicatorId: return "duplicate-indicator-id";
    case Rule::NoDmus: return "no-dmus";
    case Rule::DuplicateDmuId: return "duplicate-dmu-id";
    case Rule::ValuesLength: return "values-length";
    case Rule::NegativeValue: return "negative-value";
    case Rule::NonFiniteValue: return "non-finite-value";
    case Rule::ZeroValueVector: return "zero-value-vector";
    case Rule::GoalsLength: return "goals-length";
    case Rule::NegativeGoal: return "negative-goal";
    case Rule::NonPositiveEndowment: return "non-positive-endowment";
    case Rule::WeightsLength: return "weights-length";
    case Rule::NonPositiveWeight: return "non-positive-weight";
    case Rule::WeightSum: return "weight-sum";
    case Rule::CeilingsLength: return "ceilings-length";
    case Rule::NegativeCeiling: return "negative-ceiling";
    case Rule::ZeroCeilingWithPositiveActual: return "zero-ceiling-with-positive-actual";
    case Rule::UnknownDmuInCeilings: return "unknown-dmu-in-ceilings";
    case Rule::UnknownDmuInOverrides: return "unknown-dmu-in-overrides";
    case Rule::EmptyGroup: return "empty-group";
    case Rule::UnknownDmuInGroup: return "unknown-dmu-in-group";
    case Rule::DmuInSeveralGroups: return "dmu-in-several-groups";
    case Rule::DmuWithoutGroup: return "dmu-without-group";
  }
  return "unknown";
}

namespace {

void check_weights(const std::vector<double> & weights,
                   std::size_t s,
                   const std::string & dmu_id,
                   const std::vector<Indicator> & indicators,
                   std::vector<Violation> & out)
{
  if(weights.size() != s)
  {
    out.push_back({Rule::WeightsLength, dmu_id, "",
                   "expected " + std::to_string(s) + " weights, got " + std::to_string(weights.size())});
    return;
  }
  double sum = 0.0;
  for(std::size_t r = 0; r < s; ++r)
  {
    sum += weights[r];
    if(!(weights[r] > 0.0))
    {
      out.push_back({Rule::NonPositiveWeight, dmu_id, indicators[r].id,
                     describe("weight must be strictly positive; drop the indicator instead of giving it zero weight",
                              weights[r])});
    }
  }
  if(!(std::abs(sum - 1.0) <= kWeightSumTolerance))
    out.push_back({Rule::WeightSum, dmu_id, "", describe("weights must sum to 1", sum)});
}

} // namespace

std::vector<Violation> validate_dataset(const Dataset & dataset)
{
  std::vector<Violation> out;
  const auto & indicators = dataset.indicators;
  const std::size_t s = indicators.size();

  if(s == 0) out.push_back({Rule::NoIndicators, "", "", "at least one indicator is required"});
  {
    std::set<std::string> seen;
    for(const auto & ind : indicators)
    {
      if(!seen.insert(ind.id).second)
        out.push_back({Rule::DuplicateIndicatorId, "", ind.id, "indicator id '" + ind.id + "' is not unique"});
    }
  }

  if(dataset.dmus.empty()) out.push_back({Rule::NoDmus, "", "", "at least one DMU is required"});

  std::set<std::string> dmu_ids;
  for(const auto & dmu : dataset.dmus)
  {
    if(!dmu_ids.insert(dmu.id).second)
      out.push_back({Rule::DuplicateDmuId, dmu.id, "", "DMU id '" + dmu.id + "' is not unique"});

    if(dmu.values.size() != s)
    {
      out.push_back({Rule::ValuesLength, dmu.id, "",
                     "expected " + std::to_string(s) + " values, got " + std::to_string(dmu.values.size())});
    }
    else
    {
      bool any_positive = false;
      for(std::size_t r = 0; r < s; ++r)
      {
        const double y = dmu.values[r];
        if(!std::isfinite(y))
          out.push_back({Rule::NonFiniteValue, dmu.id, indicators[r].id, "value is not finite"});
        else if(y < 0.0)
          out.push_back({Rule::NegativeValue, dmu.id, indicators[r].id, describe("value must be >= 0", y)});
        else if(y > 0.0)
          any_positive = true;
      }
      if(!any_positive)
        out.push_back({Rule::ZeroValueVector, dmu.id, "", "indicator vector Y_j must not be the zero vector"});
    }

    if(dmu.goals.size() != s)
    {
      out.push_back({Rule::GoalsLength, dmu.id, "",
                     "expected " + std::to_string(s) + " goals, got " + std::to_string(dmu.goals.size())});
    }
    else
    {
      for(std::size_t r = 0; r < s; ++r)
      {
        if(!std::isfinite(dmu.goals[r]))
          out.push_back({Rule::NonFiniteValue, dmu.id, indicators[r].id, "goal is not finite"});
        else if(dmu.goals[r] < 0.0)
          out.push_back({Rule::NegativeGoal, dmu.id, indicators[r].id, describe("goal must be >= 0", dmu.goals[r])});
      }
    }

    if(!(dmu.endowment > 0.0) || !std::isfinite(dmu.endowment))
      out.push_back({Rule::NonPositiveEndowment, dmu.id, "", describe("endowment must be > 0", dmu.endowment)});
  }

  const auto & schedule = dataset.schedule;
  if(s > 0) check_weights(schedule.weights, s, "", indicators, out);
  for(const auto & [id, weights] : schedule.weight_overrides)
  {
    if(!dmu_ids.count(id))
    {
      out.push_back({Rule::UnknownDmuInOverrides, id, "", "weight override for unknown DMU '" + id + "'"});
      continue;
    }
    if(s > 0) check_weights(weights, s, id, indicators, out);
  }

  if(const auto * explicit_ceilings = std::get_if<ExplicitCeilings>(&schedule.ceilings))
  {
    for(const auto & [id, ceilings] : explicit_ceilings->by_dmu)
    {
      auto j = dataset.find_dmu(id);
      if(!j)
      {
        out.push_back({Rule::UnknownDmuInCeilings, id, "", "ceilings for unknown DMU '" + id + "'"});
        continue;
      }
      if(ceilings.size() != s)
      {
        out.push_back({Rule::CeilingsLength, id, "",
                       "expected " + std::to_string(s) + " ceilings, got " + std::to_string(ceilings.size())});
        continue;
      }
      const auto & values = dataset.dmus[*j].values;
      for(std::size_t r = 0; r < s; ++r)
      {
        if(!(ceilings[r] >= 0.0))
          out.push_back({Rule::NegativeCeiling, id, indicators[r].id, describe("ceiling must be >= 0", ceilings[r])});
        else if(ceilings[r] == 0.0 && r < values.size() && values[r] > 0.0)
          out.push_back({Rule::ZeroCeilingWithPositiveActual, id, indicators[r].id,
                         "ceiling must be > 0 where the actual value is positive"});
      }
    }
  }

  std::map<std::string, int> membership;
  for(const auto & group : dataset.grouping.groups)
  {
    if(group.members.empty())
      out.push_back({Rule::EmptyGroup, "", "", "group '" + group.id + "' has no members"});
    for(const auto & member : group.members)
    {
      if(!dmu_ids.count(member))
        out.push_back({Rule::UnknownDmuInGroup, member, "", "group '" + group.id + "' lists unknown DMU"});
      else if(++membership[member] == 2)
        out.push_back({Rule::DmuInSeveralGroups, member, "", "DMU appears in more than one group"});
    }
  }
  for(const auto & dmu : dataset.dmus)
  {
    if(!membership.count(dmu.id))
      out.push_back({Rule::DmuWithoutGroup, dmu.id, "", "DMU is not assigned to any group"});
  }

  return out;
}

} // namespace goalbench
