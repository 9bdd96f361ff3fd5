#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "goalbench/domain.hpp"
#include "goalbench/frontier.hpp"
#include "goalbench/payments.hpp"
#include "goalbench/settings.hpp"
#include "goalbench/solver.hpp"

namespace goalbench {

class BuildError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Goal-adjusted benchmarking MILP for one group, with the column indices of
/// every model variable. Indices are [k][j] for intensities (k over E, j over
/// the group) and [j][r] for per-indicator quantities.
struct MilpProblem
{
  LinearProgram lp;
  std::string group_id;
  std::vector<std::string> members;
  EfficientSet efficient;
  bool uses_sos1 = true;
  std::vector<std::string> warnings;

  std::vector<std::vector<int>> lambda;
  std::vector<int> lambda_total;
  std::vector<int> facet_gap; ///< d_k
  std::vector<int> normal;    ///< u_r
  int offset = -1;            ///< u_0
  std::vector<int> facet_switch; ///< b_k, big-M formulation only

  std::vector<std::vector<int>> deviation; ///< s_rj
  std::vector<std::vector<int>> product;   ///< z_rj = s_rj * I2_rj
  std::vector<std::vector<int>> excess;    ///< p+_rj, in units of Q_j w_r
  std::vector<std::vector<int>> shortfall; ///< p-_rj, in units of Q_j w_r
  std::vector<std::vector<int>> full_pay;  ///< I1_rj
  std::vector<std::vector<int>> linear_pay; ///< I2_rj
  std::vector<std::vector<int>> zero_pay;  ///< I3_rj

  /// max_{k in E} y_rk per indicator.
  std::vector<double> upper_reach;
  /// p_rj(s^g_rj) / (Q_j w_r) per member and indicator.
  std::vector<std::vector<double>> goal_rate;
};

/// Builds the MILP for `group`. SOS1 facet linking is used when
/// settings.use_sos1 is set and the backend supports it; otherwise the big-M
/// formulation is emitted with a warning.
MilpProblem build_problem(const Group & group,
                          const Dataset & dataset,
                          const EfficientSet & efficient,
                          const EngineSettings & settings = {},
                          const SolverCapabilities & capabilities = {true, true, true});

struct Hyperplane
{
  std::vector<double> normal;
  double offset = 0.0;

  double evaluate(std::span<const double> point) const;
};

struct DmuOutcome
{
  std::string id;
  std::vector<double> actual;
  std::vector<double> target;
  std::vector<double> deviation;
  std::vector<double> goals;
  std::vector<PaymentRegion> regions;
  PaymentBreakdown vs_targets;
  PaymentBreakdown vs_goals;
  GoalClass goal_class = GoalClass::InteriorOfAS;
};

struct GroupSolution
{
  std::string group_id;
  std::vector<std::string> members;
  SolveStatus status = SolveStatus::Error;
  std::vector<DmuOutcome> dmus;
  std::vector<std::string> reference_set;
  Hyperplane hyperplane;
  /// Model optimum.
  double objective = kInf;
  /// sum |p(s*) - p(s^g)| / (Q w) recomputed from the extracted targets.
  double audited_objective = kInf;
  std::vector<std::string> warnings;
  std::string message;

  bool optimal() const { return status == SolveStatus::Optimal; }
  bool has_targets() const { return !dmus.empty(); }
};

/// Solves the group problem to optimality and extracts targets, reference set,
/// hyperplane and payments. With settings.tie_break, a second solve picks the
/// optimal targets with the smallest total |s_rj| / max_k y_rk.
GroupSolution solve_group(const MilpProblem & problem, const Dataset & dataset, const EngineSettings & settings = {});

struct Analysis
{
  EfficientSet efficient;
  Grouping grouping;
  std::vector<GroupSolution> groups;

  bool all_optimal() const;
};

/// Grouping used by run_analysis for the given mode.
Grouping effective_grouping(const Dataset & dataset, GroupingMode mode);

/// Computes E once, then solves every group. A failing group is reported in
/// its GroupSolution and does not stop the others.
Analysis run_analysis(const Dataset & dataset, const EngineSettings & settings = {});

} // namespace goalbench
