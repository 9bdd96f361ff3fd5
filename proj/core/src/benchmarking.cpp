#include "goalbench/benchmarking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace goalbench {

namespace {

std::string indexed(const char * stem, const std::string & a)
{
  return std::string(stem) + "(" + a + ")";
}

std::string indexed(const char * stem, const std::string & a, const std::string & b)
{
  return std::string(stem) + "(" + a + "," + b + ")";
}

} // namespace

MilpProblem build_problem(const Group & group,
                          const Dataset & dataset,
                          const EfficientSet & efficient,
                          const EngineSettings & settings,
                          const SolverCapabilities & capabilities)
{
  if(group.members.empty()) throw BuildError("group '" + group.id + "' has no members");
  if(efficient.empty()) throw BuildError("the extreme efficient set is empty");

  const std::size_t s = dataset.indicator_count();
  const std::size_t m = efficient.size();
  std::vector<const DmuRecord *> members;
  for(const auto & id : group.members)
  {
    auto j = dataset.find_dmu(id);
    if(!j) throw BuildError("group '" + group.id + "' references unknown DMU '" + id + "'");
    members.push_back(&dataset.dmus[*j]);
  }
  const std::size_t n = members.size();
  const auto & indicators = dataset.indicators;

  MilpProblem p;
  p.group_id = group.id;
  p.members = group.members;
  p.efficient = efficient;
  p.uses_sos1 = settings.use_sos1 && capabilities.supports_sos1;
  auto & lp = p.lp;

  p.upper_reach.assign(s, 0.0);
  for(std::size_t r = 0; r < s; ++r)
  {
    for(const auto & y : efficient.matrix) p.upper_reach[r] = std::max(p.upper_reach[r], y[r]);
  }

  // Hyperplane u'Y + u0 = 0 and the per-point gaps d_k.
  for(std::size_t r = 0; r < s; ++r) p.normal.push_back(lp.add_variable(indexed("u", indicators[r].id), -kInf, kInf));
  p.offset = lp.add_variable("u0", -kInf, kInf);

  p.lambda.assign(m, {});
  for(std::size_t k = 0; k < m; ++k)
  {
    const auto & ek = efficient.members[k];
    for(std::size_t j = 0; j < n; ++j) p.lambda[k].push_back(lp.add_variable(indexed("lambda", ek, members[j]->id)));
    p.lambda_total.push_back(lp.add_variable(indexed("lambda", ek)));
    p.facet_gap.push_back(lp.add_variable(indexed("d", ek)));
  }

  p.deviation.assign(n, {});
  p.product.assign(n, {});
  p.excess.assign(n, {});
  p.shortfall.assign(n, {});
  p.full_pay.assign(n, {});
  p.linear_pay.assign(n, {});
  p.zero_pay.assign(n, {});
  p.goal_rate.assign(n, {});

  for(std::size_t j = 0; j < n; ++j)
  {
    const auto & dmu = *members[j];
    // Projection onto a convex combination of E.
    for(std::size_t r = 0; r < s; ++r)
    {
      const auto & key = dmu.id;
      const auto & ind = indicators[r].id;
      p.deviation[j].push_back(lp.add_variable(indexed("s", ind, key), -kInf, kInf));
      p.product[j].push_back(lp.add_variable(indexed("z", ind, key), -kInf, kInf));
      p.excess[j].push_back(lp.add_variable(indexed("pplus", ind, key), 0.0, kInf, 1.0));
      p.shortfall[j].push_back(lp.add_variable(indexed("pminus", ind, key), 0.0, kInf, 1.0));
      p.full_pay[j].push_back(lp.add_binary(indexed("I1", ind, key)));
      p.linear_pay[j].push_back(lp.add_binary(indexed("I2", ind, key)));
      p.zero_pay[j].push_back(lp.add_binary(indexed("I3", ind, key)));

      std::vector<Term> projection;
      for(std::size_t k = 0; k < m; ++k) projection.push_back({p.lambda[k][j], efficient.matrix[k][r]});
      projection.push_back({p.deviation[j][r], -1.0});
      lp.add_row(indexed("project", ind, key), projection, dmu.values[r], dmu.values[r]);
    }
    std::vector<Term> convex;
    for(std::size_t k = 0; k < m; ++k) convex.push_back({p.lambda[k][j], 1.0});
    lp.add_row(indexed("convex", dmu.id), convex, 1.0, 1.0);
  }

  for(std::size_t k = 0; k < m; ++k)
  {
    std::vector<Term> on_plane;
    for(std::size_t r = 0; r < s; ++r) on_plane.push_back({p.normal[r], efficient.matrix[k][r]});
    on_plane.push_back({p.offset, 1.0});
    on_plane.push_back({p.facet_gap[k], 1.0});
    lp.add_row(indexed("plane", efficient.members[k]), on_plane, 0.0, 0.0);
  }

  // Strictly positive normal. Rows with y_rj = 0 cannot hold and are dropped;
  // the scale of (u, u0) is free, so any positive floor does the same job.
  for(std::size_t r = 0; r < s; ++r)
  {
    bool any = false;
    for(std::size_t j = 0; j < n; ++j)
    {
      const double y = members[j]->values[r];
      if(y <= 0.0) continue;
      any = true;
      lp.add_row(indexed("positive", indicators[r].id, members[j]->id), {{p.normal[r], y}}, 1.0, kInf);
    }
    if(!any)
    {
      const double floor = p.upper_reach[r] > 0.0 ? 1.0 / p.upper_reach[r] : 1.0;
      lp.add_row(indexed("positive", indicators[r].id), {{p.normal[r], 1.0}}, floor, kInf);
    }
  }

  // Payment linearisation, row (8.1) expressed in units of Q_j w_r.
  for(std::size_t j = 0; j < n; ++j)
  {
    const auto & dmu = *members[j];
    for(std::size_t r = 0; r < s; ++r)
    {
      const auto & key = dmu.id;
      const auto & ind = indicators[r].id;
      const double y = dmu.values[r];
      const double d = dataset.schedule.ceiling(dmu, r);
      const double reach = p.upper_reach[r];
      const double goal_rate = achievement(dmu.goals[r] - y, d);
      p.goal_rate[j].push_back(goal_rate);

      const int sv = p.deviation[j][r];
      const int zv = p.product[j][r];
      const int i1 = p.full_pay[j][r];
      const int i2 = p.linear_pay[j][r];
      const int i3 = p.zero_pay[j][r];

      if(d > 0.0)
      {
        lp.add_row(indexed("pay", ind, key),
                   {{i1, 1.0}, {i2, 1.0}, {zv, -1.0 / d}, {p.excess[j][r], 1.0}, {p.shortfall[j][r], -1.0}}, goal_rate,
                   goal_rate);
      }
      else
      {
        // Zero ceiling: the payment is a step, the linear branch is unused.
        lp.set_bounds(i2, 0.0, 0.0);
        lp.add_row(indexed("pay", ind, key), {{i1, 1.0}, {p.excess[j][r], 1.0}, {p.shortfall[j][r], -1.0}}, goal_rate,
                   goal_rate);
      }
      lp.add_row(indexed("zbox_up", ind, key), {{zv, 1.0}, {i2, -reach}}, -kInf, 0.0);
      lp.add_row(indexed("zbox_lo", ind, key), {{zv, 1.0}, {i2, y}}, 0.0, kInf);
      lp.add_row(indexed("szbox_up", ind, key), {{sv, 1.0}, {zv, -1.0}, {i2, reach}}, -kInf, reach);
      lp.add_row(indexed("szbox_lo", ind, key), {{sv, 1.0}, {zv, -1.0}, {i2, -y}}, -y, kInf);
      lp.add_row(indexed("region_lo", ind, key), {{sv, 1.0}, {i3, -d}, {i1, y}}, 0.0, kInf);
      lp.add_row(indexed("region_up", ind, key), {{sv, 1.0}, {i2, -d}, {i3, -reach}}, -kInf, 0.0);
      lp.add_row(indexed("one_region", ind, key), {{i1, 1.0}, {i2, 1.0}, {i3, 1.0}}, 1.0, 1.0);
    }
  }

  for(std::size_t k = 0; k < m; ++k)
  {
    std::vector<Term> total{{p.lambda_total[k], 1.0}};
    for(std::size_t j = 0; j < n; ++j) total.push_back({p.lambda[k][j], -1.0});
    lp.add_row(indexed("aggregate", efficient.members[k]), total, 0.0, 0.0);
  }

  if(p.uses_sos1)
  {
    for(std::size_t k = 0; k < m; ++k) lp.add_sos1({p.lambda_total[k], p.facet_gap[k]});
    return p;
  }

  // Big-M facet linking. The intensity side is bounded by |J_g|; the gap side
  // needs a bound on u, which the method does not provide.
  double gap_bound = 0.0;
  for(std::size_t r = 0; r < s; ++r)
  {
    double inverse = 0.0;
    for(const auto * dmu : members)
    {
      if(dmu->values[r] > 0.0) inverse = std::max(inverse, 1.0 / dmu->values[r]);
    }
    if(inverse == 0.0) inverse = p.upper_reach[r] > 0.0 ? 1.0 / p.upper_reach[r] : 1.0;
    const double u_cap = settings.bigm_u_factor * inverse;
    lp.set_bounds(p.normal[r], -kInf, u_cap);
    double lowest = kInf;
    for(const auto & y : efficient.matrix) lowest = std::min(lowest, y[r]);
    gap_bound += u_cap * (p.upper_reach[r] - lowest);
  }
  gap_bound = std::max(gap_bound, 1.0);
  const double group_size = static_cast<double>(n);
  for(std::size_t k = 0; k < m; ++k)
  {
    const auto & ek = efficient.members[k];
    const int b = lp.add_binary(indexed("b", ek));
    p.facet_switch.push_back(b);
    lp.add_row(indexed("gap_switch", ek), {{p.facet_gap[k], 1.0}, {b, -gap_bound}}, -kInf, 0.0);
    lp.add_row(indexed("use_switch", ek), {{p.lambda_total[k], 1.0}, {b, group_size}}, -kInf, group_size);
  }
  std::ostringstream warning;
  warning << "group '" << group.id << "': SOS1 unavailable, using big-M facet linking with u_r <= "
          << settings.bigm_u_factor << " * max_j 1/y_rj and M = " << gap_bound << " on d_k";
  p.warnings.push_back(warning.str());
  return p;
}

double Hyperplane::evaluate(std::span<const double> point) const
{
  double value = offset;
  for(std::size_t r = 0; r < normal.size(); ++r) value += normal[r] * point[r];
  return value;
}

namespace {

// Among solutions within `slack` of the optimum, minimise sum |s_rj| / M2_r.
SolveResult break_ties(const MilpProblem & p, SolverBackend & backend, const SolveLimits & limits, double optimum)
{
  LinearProgram lp = p.lp;
  std::vector<Term> objective_row;
  for(int c = 0; c < lp.column_count(); ++c)
  {
    const double cost = lp.columns()[c].cost;
    if(cost != 0.0) objective_row.push_back({c, cost});
    lp.set_cost(c, 0.0);
  }
  const double slack = 1e-7 + 1e-9 * std::abs(optimum);
  lp.add_row("optimal_payment_gap", objective_row, -kInf, optimum + slack);
  for(std::size_t j = 0; j < p.deviation.size(); ++j)
  {
    for(std::size_t r = 0; r < p.deviation[j].size(); ++r)
    {
      const double scale = p.upper_reach[r] > 0.0 ? 1.0 / p.upper_reach[r] : 1.0;
      const int up = lp.add_variable("adjust_up", 0.0, kInf, scale);
      const int down = lp.add_variable("adjust_down", 0.0, kInf, scale);
      lp.add_row("adjust", {{p.deviation[j][r], 1.0}, {up, -1.0}, {down, 1.0}}, 0.0, 0.0);
    }
  }
  return backend.solve(lp, limits);
}

void extract(const MilpProblem & p,
             const Dataset & dataset,
             const EngineSettings & settings,
             std::span<const double> x,
             GroupSolution & out)
{
  const std::size_t s = dataset.indicator_count();
  const std::size_t m = p.efficient.size();
  const auto & schedule = dataset.schedule;

  for(std::size_t k = 0; k < m; ++k)
  {
    double used = 0.0;
    for(int col : p.lambda[k]) used += std::max(x[col], 0.0);
    if(used > settings.lambda_zero_tol) out.reference_set.push_back(p.efficient.members[k]);
  }
  for(int col : p.normal) out.hyperplane.normal.push_back(x[col]);
  out.hyperplane.offset = x[p.offset];

  out.audited_objective = 0.0;
  for(std::size_t j = 0; j < p.members.size(); ++j)
  {
    const auto & dmu = dataset.dmu(p.members[j]);
    DmuOutcome o;
    o.id = dmu.id;
    o.actual = dmu.values;
    o.goals = dmu.goals;
    o.target.assign(s, 0.0);
    // The convexity row only holds to the MIP feasibility tolerance.
    double mass = 0.0;
    for(std::size_t k = 0; k < m; ++k) mass += std::max(x[p.lambda[k][j]], 0.0);
    if(!(mass > 0.0)) mass = 1.0;
    for(std::size_t k = 0; k < m; ++k)
    {
      const double lambda = std::max(x[p.lambda[k][j]], 0.0) / mass;
      for(std::size_t r = 0; r < s; ++r) o.target[r] += lambda * p.efficient.matrix[k][r];
    }
    std::vector<double> goal_deviation(s);
    for(std::size_t r = 0; r < s; ++r)
    {
      o.deviation.push_back(o.target[r] - o.actual[r]);
      goal_deviation[r] = o.goals[r] - o.actual[r];
      const double i1 = x[p.full_pay[j][r]];
      const double i2 = x[p.linear_pay[j][r]];
      const double i3 = x[p.zero_pay[j][r]];
      o.regions.push_back(i1 >= i2 && i1 >= i3 ? PaymentRegion::FullPay
                                               : (i2 >= i3 ? PaymentRegion::LinearPay : PaymentRegion::ZeroPay));
    }
    o.vs_targets = total_payment(o.deviation, dmu, schedule);
    o.vs_goals = total_payment(goal_deviation, dmu, schedule);
    for(std::size_t r = 0; r < s; ++r)
    {
      const double unit = dmu.endowment * schedule.weight(dmu, r);
      out.audited_objective += std::abs(o.vs_targets.per_indicator[r] - o.vs_goals.per_indicator[r]) / unit;
    }
    o.goal_class = classify_goal(o.goals, p.efficient, settings);
    out.dmus.push_back(std::move(o));
  }
}

} // namespace

GroupSolution solve_group(const MilpProblem & problem, const Dataset & dataset, const EngineSettings & settings)
{
  GroupSolution out;
  out.group_id = problem.group_id;
  out.members = problem.members;
  out.warnings = problem.warnings;

  auto backend = make_backend(settings.solver);
  if(problem.uses_sos1 && !backend->capabilities().supports_sos1)
  {
    out.message = "backend '" + std::string(backend->id()) + "' cannot solve a problem with SOS1 sets";
    return out;
  }
  SolveLimits limits;
  limits.time_limit = settings.time_limit;

  SolveResult result = backend->solve(problem.lp, limits);
  out.status = result.status;
  out.message = result.message;
  if(result.status == SolveStatus::Infeasible)
  {
    out.message = "internal error: benchmarking model infeasible although E is nonempty";
    return out;
  }
  if(!result.has_solution()) return out;
  out.objective = result.objective;

  if(result.optimal() && settings.tie_break)
  {
    SolveResult refined = break_ties(problem, *backend, limits, result.objective);
    if(refined.optimal())
      result.values = std::move(refined.values);
    else
      out.warnings.push_back(std::string("tie-break solve ended with status ") + status_name(refined.status)
                             + "; keeping the first optimal solution");
  }
  extract(problem, dataset, settings, result.values, out);
  return out;
}

bool Analysis::all_optimal() const
{
  return std::all_of(groups.begin(), groups.end(), [](const GroupSolution & g) { return g.optimal(); });
}

Grouping effective_grouping(const Dataset & dataset, GroupingMode mode)
{
  switch(mode)
  {
    case GroupingMode::PerFile: return dataset.grouping;
    case GroupingMode::Singletons: return singleton_grouping(dataset.dmus);
    case GroupingMode::SingleGroup: return single_group(dataset.dmus);
  }
  return dataset.grouping;
}

Analysis run_analysis(const Dataset & dataset, const EngineSettings & settings)
{
  check_settings(settings);
  Analysis analysis;
  analysis.grouping = effective_grouping(dataset, settings.grouping_mode);
  analysis.efficient = extreme_efficient_set(dataset, settings);
  const auto capabilities = make_backend(settings.solver)->capabilities();

  const auto & groups = analysis.grouping.groups;
  analysis.groups.resize(groups.size());
  auto solve_one = [&](std::size_t g) {
    GroupSolution & slot = analysis.groups[g];
    try
    {
      const auto problem = build_problem(groups[g], dataset, analysis.efficient, settings, capabilities);
      slot = solve_group(problem, dataset, settings);
    }
    catch(const std::exception & e)
    {
      slot = GroupSolution{};
      slot.group_id = groups[g].id;
      slot.members = groups[g].members;
      slot.status = SolveStatus::Error;
      slot.message = e.what();
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(settings.jobs, 1), groups.size());
  if(workers <= 1)
  {
    for(std::size_t g = 0; g < groups.size(); ++g) solve_one(g);
    return analysis;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for(std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back([&] {
      for(std::size_t g = next++; g < groups.size(); g = next++) solve_one(g);
    });
  }
  pool.clear();
  return analysis;
}

void check_settings(const EngineSettings & settings)
{
  if(!(settings.feasibility_tol > 0.0)) throw std::invalid_argument("feasibility tolerance must be > 0");
  if(!(settings.efficiency_tol > 0.0)) throw std::invalid_argument("efficiency tolerance must be > 0");
  if(!(settings.lambda_zero_tol > 0.0)) throw std::invalid_argument("lambda zero tolerance must be > 0");
  if(!(settings.time_limit > 0.0)) throw std::invalid_argument("time limit must be > 0");
  if(!(settings.bigm_u_factor > 0.0)) throw std::invalid_argument("big-M u factor must be > 0");
}

} // namespace goalbench
