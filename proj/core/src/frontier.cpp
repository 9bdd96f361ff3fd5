#include "goalbench/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace goalbench {

namespace {

struct Shortfall
{
  double total;
  std::vector<double> per_indicator;
};

Shortfall solve_shortfall(std::span<const double> point, const PointSet & points, const EngineSettings & settings)
{
  if(points.empty()) throw std::invalid_argument("attainable set needs at least one point");
  const std::size_t s = point.size();
  LinearProgram lp;
  std::vector<int> lambda;
  for(std::size_t j = 0; j < points.size(); ++j) lambda.push_back(lp.add_variable("lambda" + std::to_string(j)));
  std::vector<int> gap;
  for(std::size_t r = 0; r < s; ++r) gap.push_back(lp.add_variable("e" + std::to_string(r), 0.0, kInf, 1.0));

  for(std::size_t r = 0; r < s; ++r)
  {
    std::vector<Term> terms;
    for(std::size_t j = 0; j < points.size(); ++j) terms.push_back({lambda[j], points[j].at(r)});
    terms.push_back({gap[r], 1.0});
    lp.add_row("cover" + std::to_string(r), terms, point[r], kInf);
  }
  std::vector<Term> convex;
  for(int col : lambda) convex.push_back({col, 1.0});
  lp.add_row("convexity", convex, 1.0, 1.0);

  auto backend = make_backend(settings.solver);
  const auto result = backend->solve(lp, {settings.time_limit});
  if(!result.optimal())
    throw std::runtime_error(std::string("attainable-set LP failed: ") + status_name(result.status));
  Shortfall out{std::max(result.objective, 0.0), {}};
  for(int col : gap) out.per_indicator.push_back(std::max(result.values[col], 0.0));
  return out;
}

} // namespace

PointSet points_of(const Dataset & dataset)
{
  PointSet points;
  points.reserve(dataset.dmus.size());
  for(const auto & dmu : dataset.dmus) points.push_back(dmu.values);
  return points;
}

bool EfficientSet::contains(const std::string & id) const
{
  return std::find(members.begin(), members.end(), id) != members.end();
}

const char * goal_class_name(GoalClass goal_class)
{
  switch(goal_class)
  {
    case GoalClass::OutsideAS: return "OutsideAS";
    case GoalClass::InteriorOfAS: return "InteriorOfAS";
    case GoalClass::OnParetoFrontier: return "OnParetoFrontier";
  }
  return "Unknown";
}

double attainable_shortfall(std::span<const double> point, const PointSet & points, const EngineSettings & settings)
{
  return solve_shortfall(point, points, settings).total;
}

bool as_membership(std::span<const double> point, const PointSet & points, const EngineSettings & settings)
{
  return attainable_shortfall(point, points, settings) <= settings.feasibility_tol;
}

bool as_membership(std::span<const double> point, const Dataset & dataset, const EngineSettings & settings)
{
  return as_membership(point, points_of(dataset), settings);
}

double pareto_slack(std::span<const double> point, const PointSet & points, const EngineSettings & settings)
{
  const auto shortfall = solve_shortfall(point, points, settings);
  if(shortfall.total > settings.feasibility_tol)
    throw PreconditionError("pareto_slack: point is outside the attainable set");

  // Points within tolerance of the boundary are pulled back onto it first.
  const std::size_t s = point.size();
  LinearProgram lp;
  std::vector<int> lambda;
  for(std::size_t j = 0; j < points.size(); ++j) lambda.push_back(lp.add_variable("lambda" + std::to_string(j)));
  std::vector<int> slack;
  for(std::size_t r = 0; r < s; ++r) slack.push_back(lp.add_variable("t" + std::to_string(r), 0.0, kInf, -1.0));
  for(std::size_t r = 0; r < s; ++r)
  {
    std::vector<Term> terms;
    for(std::size_t j = 0; j < points.size(); ++j) terms.push_back({lambda[j], points[j].at(r)});
    terms.push_back({slack[r], -1.0});
    lp.add_row("cover" + std::to_string(r), terms, point[r] - shortfall.per_indicator[r], kInf);
  }
  std::vector<Term> convex;
  for(int col : lambda) convex.push_back({col, 1.0});
  lp.add_row("convexity", convex, 1.0, 1.0);

  auto backend = make_backend(settings.solver);
  const auto result = backend->solve(lp, {settings.time_limit});
  if(!result.optimal())
    throw std::runtime_error(std::string("Pareto slack LP failed: ") + status_name(result.status));
  return std::max(-result.objective, 0.0);
}

double pareto_slack(std::span<const double> point, const Dataset & dataset, const EngineSettings & settings)
{
  return pareto_slack(point, points_of(dataset), settings);
}

EfficientSet extreme_efficient_set(const Dataset & dataset, const EngineSettings & settings)
{
  const auto points = points_of(dataset);
  const std::size_t n = points.size();

  std::vector<std::size_t> efficient;
  for(std::size_t j = 0; j < n; ++j)
  {
    if(pareto_slack(points[j], points, settings) <= settings.efficiency_tol) efficient.push_back(j);
  }

  // Collapse identical points onto the lexicographically smallest id.
  std::vector<std::size_t> by_id = efficient;
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return dataset.dmus[a].id < dataset.dmus[b].id; });
  std::vector<std::size_t> distinct;
  for(std::size_t j : by_id)
  {
    const bool duplicate = std::any_of(distinct.begin(), distinct.end(), [&](std::size_t k) {
      for(std::size_t r = 0; r < points[j].size(); ++r)
      {
        if(std::abs(points[j][r] - points[k][r]) > settings.feasibility_tol) return false;
      }
      return true;
    });
    if(!duplicate) distinct.push_back(j);
  }
  std::sort(distinct.begin(), distinct.end());

  EfficientSet out;
  for(std::size_t k : distinct)
  {
    bool extreme = true;
    if(distinct.size() > 1)
    {
      PointSet others;
      for(std::size_t other : distinct)
      {
        if(other != k) others.push_back(points[other]);
      }
      extreme = !as_membership(points[k], others, settings);
    }
    if(extreme)
    {
      out.members.push_back(dataset.dmus[k].id);
      out.matrix.push_back(points[k]);
    }
  }
  return out;
}

GoalClass classify_goal(std::span<const double> goal, const EfficientSet & efficient, const EngineSettings & settings)
{
  if(!as_membership(goal, efficient.matrix, settings)) return GoalClass::OutsideAS;
  return pareto_slack(goal, efficient.matrix, settings) <= settings.efficiency_tol ? GoalClass::OnParetoFrontier
                                                                                   : GoalClass::InteriorOfAS;
}

} // namespace goalbench
