#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "goalbench/domain.hpp"
#include "goalbench/settings.hpp"

namespace goalbench {

/// Points stored row-wise: points[j] is the indicator vector of unit j.
using PointSet = std::vector<std::vector<double>>;

PointSet points_of(const Dataset & dataset);

/// The extreme efficient DMUs E that span the Pareto frontier of the
/// attainable set.
struct EfficientSet
{
  std::vector<std::string> members;
  PointSet matrix;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(const std::string & id) const;
};

enum class GoalClass
{
  OutsideAS,
  InteriorOfAS,
  OnParetoFrontier,
};

const char * goal_class_name(GoalClass goal_class);

class PreconditionError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Smallest total shortfall sum_r max(0, point_r - (sum_j lambda_j Y_j)_r)
/// over convex combinations of `points`. Zero exactly on the attainable set.
double attainable_shortfall(std::span<const double> point, const PointSet & points, const EngineSettings & settings = {});

/// True iff `point` is dominated by a convex combination of `points`, with
/// the shortfall tolerance settings.feasibility_tol.
bool as_membership(std::span<const double> point, const PointSet & points, const EngineSettings & settings = {});
bool as_membership(std::span<const double> point, const Dataset & dataset, const EngineSettings & settings = {});

/// Optimum of the additive slack problem
///   max sum_r t_r  s.t.  sum_j lambda_j Y_j >= point + t, sum lambda = 1, lambda, t >= 0.
/// Zero (up to efficiency_tol) iff `point` is Pareto efficient in the
/// attainable set. Throws PreconditionError if `point` is not attainable.
double pareto_slack(std::span<const double> point, const PointSet & points, const EngineSettings & settings = {});
double pareto_slack(std::span<const double> point, const Dataset & dataset, const EngineSettings & settings = {});

/// Efficient DMUs that are not dominated by a convex combination of the other
/// efficient DMUs. Among identical efficient points only the smallest id is
/// kept. Members follow dataset order.
EfficientSet extreme_efficient_set(const Dataset & dataset, const EngineSettings & settings = {});

GoalClass classify_goal(std::span<const double> goal, const EfficientSet & efficient, const EngineSettings & settings = {});

} // namespace goalbench
