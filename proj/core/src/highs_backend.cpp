#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "Highs.h"
#include "goalbench/solver.hpp"

namespace goalbench {

namespace {

// Members with |x| above this count as nonzero for SOS1 purposes.
constexpr double kSosZeroTolerance = 1e-9;

struct Bounds
{
  std::vector<double> lower;
  std::vector<double> upper;
};

class HighsBackend final : public SolverBackend
{
public:
  explicit HighsBackend(bool sos1_branching) : sos1_branching_(sos1_branching) {}

  std::string_view id() const override { return sos1_branching_ ? "highs" : "highs-bigm"; }

  SolverCapabilities capabilities() const override { return {sos1_branching_, true, true}; }

  SolveResult solve(const LinearProgram & problem, const SolveLimits & limits) override
  {
    Bounds bounds;
    for(const auto & col : problem.columns())
    {
      bounds.lower.push_back(col.lower);
      bounds.upper.push_back(col.upper);
    }
    if(problem.sos1_sets().empty()) return solve_node(problem, bounds, limits, limits.time_limit);
    if(!sos1_branching_)
      return {SolveStatus::Error, {}, kInf, "backend '" + std::string(id()) + "' does not support SOS1 sets"};
    return branch_on_sos1(problem, std::move(bounds), limits);
  }

private:
  SolveResult solve_node(const LinearProgram & problem, const Bounds & bounds, const SolveLimits & limits, double time_left)
  {
    const int n = problem.column_count();
    const int m = problem.row_count();

    // Column-wise matrix from the triplets.
    std::vector<HighsInt> start(n + 1, 0);
    for(const auto & e : problem.entries()) ++start[e.col + 1];
    for(int c = 0; c < n; ++c) start[c + 1] += start[c];
    std::vector<HighsInt> index(problem.entries().size());
    std::vector<double> value(problem.entries().size());
    std::vector<HighsInt> fill(start.begin(), start.end() - 1);
    for(const auto & e : problem.entries())
    {
      const auto pos = fill[e.col]++;
      index[pos] = e.row;
      value[pos] = e.value;
    }

    std::vector<double> cost;
    std::vector<HighsInt> integrality;
    cost.reserve(n);
    integrality.reserve(n);
    for(const auto & col : problem.columns())
    {
      cost.push_back(col.cost);
      integrality.push_back(col.type == VarType::Binary ? static_cast<HighsInt>(HighsVarType::kInteger)
                                                        : static_cast<HighsInt>(HighsVarType::kContinuous));
    }
    std::vector<double> row_lower;
    std::vector<double> row_upper;
    for(const auto & row : problem.rows())
    {
      row_lower.push_back(row.lower);
      row_upper.push_back(row.upper);
    }

    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("random_seed", 0);
    if(std::isfinite(time_left)) highs.setOptionValue("time_limit", std::max(time_left, 0.0));
    const bool mip = problem.has_binaries();
    if(mip)
    {
      highs.setOptionValue("mip_rel_gap", limits.mip_gap);
      highs.setOptionValue("mip_abs_gap", limits.mip_gap);
      highs.setOptionValue("mip_feasibility_tolerance", limits.integrality_tolerance);
    }

    const HighsStatus pass = highs.passModel(
        n, m, static_cast<HighsInt>(value.size()), static_cast<HighsInt>(MatrixFormat::kColwise),
        static_cast<HighsInt>(ObjSense::kMinimize), 0.0, cost.data(), bounds.lower.data(), bounds.upper.data(),
        row_lower.data(), row_upper.data(), start.data(), index.data(), value.data(), mip ? integrality.data() : nullptr);
    if(pass == HighsStatus::kError) return {SolveStatus::Error, {}, kInf, "HiGHS rejected the model"};

    const HighsStatus run = highs.run();
    const HighsModelStatus status = highs.getModelStatus();
    SolveResult result;
    auto take_solution = [&] {
      if(highs.getInfo().primal_solution_status == kSolutionStatusFeasible)
      {
        result.values = highs.getSolution().col_value;
        result.objective = highs.getInfo().objective_function_value;
      }
    };
    switch(status)
    {
      case HighsModelStatus::kOptimal:
        result.status = SolveStatus::Optimal;
        result.values = highs.getSolution().col_value;
        result.objective = highs.getInfo().objective_function_value;
        break;
      case HighsModelStatus::kModelEmpty:
        result.status = SolveStatus::Optimal;
        result.values.assign(n, 0.0);
        for(int c = 0; c < n; ++c)
          result.values[c] = std::clamp(0.0, bounds.lower[c], bounds.upper[c]);
        result.objective = problem.objective(result.values);
        break;
      case HighsModelStatus::kInfeasible:
        result.status = SolveStatus::Infeasible;
        break;
      case HighsModelStatus::kUnbounded:
        result.status = SolveStatus::Unbounded;
        break;
      case HighsModelStatus::kUnboundedOrInfeasible:
        result.status = SolveStatus::Infeasible;
        result.message = "HiGHS reports the model as unbounded or infeasible";
        break;
      case HighsModelStatus::kTimeLimit:
        result.status = SolveStatus::TimeLimit;
        take_solution();
        break;
      default:
        result.status = run == HighsStatus::kError ? SolveStatus::Error : SolveStatus::NumericFailure;
        result.message = "HiGHS model status: " + highs.modelStatusToString(status);
        take_solution();
        break;
    }
    return result;
  }

  struct Node
  {
    std::vector<int> zeroed;
    double bound;
  };

  // Best-first branching on violated SOS1 sets. Each node fixes some SOS
  // members to zero and hands the remaining MILP to HiGHS.
  SolveResult branch_on_sos1(const LinearProgram & problem, Bounds root, const SolveLimits & limits)
  {
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();
    auto time_left = [&] {
      if(!std::isfinite(limits.time_limit)) return kInf;
      return limits.time_limit - std::chrono::duration<double>(clock::now() - started).count();
    };

    auto cmp = [](const Node & a, const Node & b) { return a.bound > b.bound; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
    open.push({{}, -kInf});

    SolveResult best;
    best.status = SolveStatus::Infeasible;
    bool timed_out = false;
    auto pruned = [&](double bound) {
      return best.has_solution() && bound >= best.objective - 1e-9 * std::max(1.0, std::abs(best.objective));
    };

    while(!open.empty())
    {
      Node node = open.top();
      open.pop();
      if(pruned(node.bound)) continue;
      if(time_left() <= 0.0)
      {
        timed_out = true;
        break;
      }

      Bounds bounds = root;
      bool consistent = true;
      for(int col : node.zeroed)
      {
        if(bounds.lower[col] > 0.0 || bounds.upper[col] < 0.0) consistent = false;
        bounds.lower[col] = 0.0;
        bounds.upper[col] = 0.0;
      }
      if(!consistent) continue;

      SolveResult relaxed = solve_node(problem, bounds, limits, time_left());
      if(relaxed.status == SolveStatus::Infeasible) continue;
      if(relaxed.status == SolveStatus::TimeLimit)
      {
        timed_out = true;
        break;
      }
      if(relaxed.status != SolveStatus::Optimal) return relaxed;
      if(pruned(relaxed.objective)) continue;

      // Most violated set: largest mass outside its largest member.
      int worst_set = -1;
      double worst_mass = kSosZeroTolerance;
      const auto & sets = problem.sos1_sets();
      for(std::size_t k = 0; k < sets.size(); ++k)
      {
        double sum = 0.0;
        double largest = 0.0;
        int nonzero = 0;
        for(int col : sets[k])
        {
          const double v = std::abs(relaxed.values[col]);
          if(v > kSosZeroTolerance) ++nonzero;
          sum += v;
          largest = std::max(largest, v);
        }
        if(nonzero > 1 && sum - largest > worst_mass)
        {
          worst_mass = sum - largest;
          worst_set = static_cast<int>(k);
        }
      }

      if(worst_set < 0)
      {
        best = std::move(relaxed);
        continue;
      }

      const auto & members = sets[worst_set];
      int first = -1;
      int last = -1;
      for(int i = 0; i < static_cast<int>(members.size()); ++i)
      {
        if(std::abs(relaxed.values[members[i]]) > kSosZeroTolerance)
        {
          if(first < 0) first = i;
          last = i;
        }
      }
      const int split = first + (last - first - 1) / 2;
      Node left{node.zeroed, relaxed.objective};
      Node right{node.zeroed, relaxed.objective};
      for(int i = 0; i <= split; ++i) left.zeroed.push_back(members[i]);
      for(int i = split + 1; i < static_cast<int>(members.size()); ++i) right.zeroed.push_back(members[i]);
      open.push(std::move(left));
      open.push(std::move(right));
    }

    if(timed_out)
    {
      best.status = SolveStatus::TimeLimit;
      best.message = "time limit reached during SOS1 branching";
    }
    return best;
  }

  bool sos1_branching_;
};

} // namespace

std::unique_ptr<SolverBackend> make_backend(std::string_view id)
{
  if(id == "highs") return std::make_unique<HighsBackend>(true);
  if(id == "highs-bigm") return std::make_unique<HighsBackend>(false);
  throw std::invalid_argument("unknown solver backend '" + std::string(id) + "'");
}

std::vector<std::string> backend_ids()
{
  return {"highs", "highs-bigm"};
}

} // namespace goalbench
