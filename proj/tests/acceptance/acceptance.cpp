// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "goalbench/benchmarking.hpp"
#include "goalbench/io.hpp"
#include "goalbench/oracle.hpp"
#include "goalbench/payments.hpp"
#include "goalbench/report.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

struct Outcome
{
  bool pass = true;
  std::string detail;

  void fail(const std::string & why)
  {
    if(pass) detail = why;
    pass = false;
  }
};

std::vector<std::string> split(const std::string & line)
{
  std::vector<std::string> out;
  std::istringstream in(line);
  for(std::string f; in >> f;) out.push_back(f);
  return out;
}

// Expected results for the six-unit example: targets, total paid against
// targets and against goals.
struct ExpectedRow
{
  const char * id;
  const char * t1;
  const char * t2;
  double pay_targets;
  double pay_goals;
};

constexpr ExpectedRow kExpected[] = {
  {"A", "2", "6.6", 12.5, 12.5},   {"B", "6", "5", 30.0, 30.0},       {"C", "8.25", "2", 10.0, 10.0},
  {"D", "4", "5.8", 12.17, 9.17},  {"E", "7.5", "3", 12.5, 16.25},    {"F", "2", "6.6", 16.8, 16.8},
};

Outcome criterion_example()
{
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto dataset = load_dataset(fixtures::table1_dir());
  EngineSettings settings;
  settings.grouping_mode = GroupingMode::Singletons;
  const auto analysis = run_analysis(dataset, settings);
  const auto text = render_report(analysis.groups, dataset, ReportFormat::Text);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> lines;
  std::istringstream in(text);
  for(std::string line; std::getline(in, line);) lines.push_back(line);

  for(const auto & row : kExpected)
  {
    std::size_t at = lines.size();
    for(std::size_t i = 0; i < lines.size(); ++i)
    {
      const auto f = split(lines[i]);
      if(f.size() > 1 && f[0] == row.id && f[1] == "Actual") at = i;
    }
    if(at + 2 >= lines.size())
    {
      o.fail(std::string("no rows for ") + row.id);
      continue;
    }
    const auto targets = split(lines[at + 1]);
    const auto goals = split(lines[at + 2]);
    // Targets | Targets p1 p2 total rate
    if(targets.size() < 8 || goals.size() < 8)
    {
      o.fail(std::string("short rows for ") + row.id);
      continue;
    }
    if(targets[1] != row.t1 || targets[2] != row.t2)
      o.fail(fmt::format("{} targets ({}, {}) != ({}, {})", row.id, targets[1], targets[2], row.t1, row.t2));
    const double paid = std::stod(targets[7]);
    const double goal_paid = std::stod(goals[7]);
    if(std::abs(paid - row.pay_targets) > 0.01 + 1e-9)
      o.fail(fmt::format("{} pays {} against targets, expected {}", row.id, paid, row.pay_targets));
    if(std::abs(goal_paid - row.pay_goals) > 0.01 + 1e-9)
      o.fail(fmt::format("{} pays {} against goals, expected {}", row.id, goal_paid, row.pay_goals));
  }
  if(seconds >= 5.0) o.fail(fmt::format("runtime {:.2f} s >= 5 s", seconds));
  if(o.pass) o.detail = fmt::format("6 DMUs match at rendered precision in {:.3f} s", seconds);
  return o;
}

Outcome criterion_efficient_set()
{
  Outcome o;
  const auto dataset = load_dataset(fixtures::table1_dir());
  EngineSettings settings;
  settings.efficiency_tol = 1e-6;
  const auto e = extreme_efficient_set(dataset, settings);
  const std::vector<std::string> expected{"A", "B", "C"};
  if(e.members != expected)
  {
    std::string got;
    for(const auto & id : e.members) got += id + " ";
    o.fail("E = { " + got + "}");
  }
  // Independent planar hull of the same points.
  std::vector<std::string> hull;
  for(std::size_t j : fixtures::hull_frontier_2d(points_of(dataset))) hull.push_back(dataset.dmus[j].id);
  if(hull != expected) o.fail("planar hull disagrees");
  if(o.pass) o.detail = "E = {A, B, C}, equal to the planar hull";
  return o;
}

Outcome criterion_goal_classes()
{
  Outcome o;
  const auto dataset = load_dataset(fixtures::table1_dir());
  const auto e = extreme_efficient_set(dataset);
  const std::pair<const char *, GoalClass> expected[] = {
    {"D", GoalClass::OutsideAS}, {"E", GoalClass::InteriorOfAS}, {"F", GoalClass::OnParetoFrontier}};
  for(const auto & [id, cls] : expected)
  {
    const auto got = classify_goal(dataset.dmu(id).goals, e);
    if(got != cls) o.fail(fmt::format("{} classified {}, expected {}", id, goal_class_name(got), goal_class_name(cls)));
  }
  if(o.pass) o.detail = "D OutsideAS, E InteriorOfAS, F OnParetoFrontier";
  return o;
}

Outcome criterion_oracle()
{
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dims(2, 3);
  std::uniform_int_distribution<int> size(3, 8);
  int instances = 0;
  int groups = 0;
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for(int i = 0; i < 100; ++i)
  {
    fixtures::RandomInstanceSpec spec;
    spec.indicators = static_cast<std::size_t>(dims(rng));
    spec.dmus = static_cast<std::size_t>(size(rng));
    spec.group_size = i % 2 == 0 ? 1 : 2;
    const auto dataset = fixtures::random_instance(rng, spec);
    const auto problems = validate_dataset(dataset);
    if(!problems.empty())
    {
      o.fail(fmt::format("instance {} invalid: {}", i, to_string(problems.front())));
      continue;
    }
    EngineSettings settings;
    const auto analysis = run_analysis(dataset, settings);
    for(std::size_t g = 0; g < analysis.groups.size(); ++g)
    {
      const auto & group = analysis.grouping.groups[g];
      const auto & solution = analysis.groups[g];
      if(!solution.optimal())
      {
        o.fail(fmt::format("instance {} group {}: {}", i, group.id, solution.message));
        continue;
      }
      if(!oracle::within_guards(group, dataset, analysis.efficient))
      {
        o.fail(fmt::format("instance {} group {} exceeds oracle guards", i, group.id));
        continue;
      }
      const auto reference = oracle::solve_group(group, dataset, analysis.efficient, settings);
      const double gap = std::abs(reference.objective - solution.objective);
      worst = std::max(worst, gap);
      if(gap > 1e-6)
        o.fail(fmt::format("instance {} group {}: model {} vs oracle {}", i, group.id, solution.objective,
                           reference.objective));
      ++groups;
    }
    ++instances;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if(o.pass)
    o.detail = fmt::format("{} instances, {} groups, max |diff| = {:.2e} ({:.1f} s)", instances, groups, worst, seconds);
  return o;
}

Outcome criterion_payments()
{
  Outcome o;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for(int i = 0; i < 1000; ++i)
  {
    const double d = 0.01 + 20.0 * unit(rng);
    const double q = 0.5 + 1000.0 * unit(rng);
    const double w = 0.01 + 0.99 * unit(rng);
    const double s = -2.0 * d + 4.0 * d * unit(rng);
    const double s_more = s + d * unit(rng);
    const double c = 0.1 + 10.0 * unit(rng);

    const double p = payment(s, q, w, d);
    if(p < 0.0 || p > q * w) o.fail(fmt::format("draw {}: p = {} outside [0, {}]", i, p, q * w));
    if(payment(s_more, q, w, d) > p) o.fail(fmt::format("draw {}: payment increases with s", i));
    if(payment(0.0, q, w, d) != q * w) o.fail(fmt::format("draw {}: p(0) != Qw", i));
    if(payment(d, q, w, d) != 0.0) o.fail(fmt::format("draw {}: p(d) != 0", i));
    if(std::abs(linearized_payment(PaymentRegion::FullPay, 0.0, q, w, d)
                - linearized_payment(PaymentRegion::LinearPay, 0.0, q, w, d))
       > 1e-12)
      o.fail(fmt::format("draw {}: regions disagree at s = 0", i));
    if(std::abs(linearized_payment(PaymentRegion::LinearPay, d, q, w, d)
                - linearized_payment(PaymentRegion::ZeroPay, d, q, w, d))
       > 1e-12)
      o.fail(fmt::format("draw {}: regions disagree at s = d", i));
    const double lin = linearized_payment(region_of(s, d), s, q, w, d);
    if(std::abs(lin - p) > 1e-12) o.fail(fmt::format("draw {}: linearized {} vs {}", i, lin, p));
    const double scaled = payment(s, c * q, w, d);
    if(std::abs(scaled - c * p) > 1e-12 * std::max(1.0, c * q))
      o.fail(fmt::format("draw {}: scale covariance off by {}", i, scaled - c * p));
    if(std::abs(p - q * w * fixtures::reference_achievement(s, d)) > 1e-12 * q)
      o.fail(fmt::format("draw {}: differs from the reference achievement", i));
    ++checked;
  }
  if(o.pass) o.detail = fmt::format("{} draws", checked);
  return o;
}

// Region bounds with the solver's feasibility slack.
bool region_consistent(PaymentRegion region, double s, double d)
{
  constexpr double tol = 1e-6;
  switch(region)
  {
    case PaymentRegion::FullPay: return s <= tol;
    case PaymentRegion::LinearPay: return d > 0.0 && s >= -tol && s <= d + tol;
    case PaymentRegion::ZeroPay: return s >= d - tol;
  }
  return false;
}

Outcome criterion_structure()
{
  Outcome o;
  std::mt19937_64 rng(99);
  std::vector<std::pair<Dataset, GroupingMode>> cases;
  const auto table1 = load_dataset(fixtures::table1_dir());
  cases.push_back({table1, GroupingMode::Singletons});
  cases.push_back({table1, GroupingMode::SingleGroup});
  for(int i = 0; i < 30; ++i)
  {
    fixtures::RandomInstanceSpec spec;
    spec.indicators = 2 + i % 3;
    spec.dmus = 4 + i % 7;
    spec.group_size = 1 + i % 4;
    cases.push_back({fixtures::random_instance(rng, spec), GroupingMode::PerFile});
  }

  EngineSettings settings;
  EngineSettings probe;
  probe.feasibility_tol = 1e-7;
  int solved = 0;
  for(std::size_t c = 0; c < cases.size(); ++c)
  {
    const auto & [dataset, mode] = cases[c];
    settings.grouping_mode = mode;
    const auto analysis = run_analysis(dataset, settings);
    const auto pts = points_of(dataset);
    std::vector<double> reach(dataset.indicator_count(), 0.0);
    for(const auto & y : analysis.efficient.matrix)
    {
      for(std::size_t r = 0; r < y.size(); ++r) reach[r] = std::max(reach[r], y[r]);
    }
    for(const auto & g : analysis.groups)
    {
      const std::string where = fmt::format("case {} group {}", c, g.group_id);
      if(!g.optimal())
      {
        o.fail(where + ": " + g.message);
        continue;
      }
      for(const auto & dmu : g.dmus)
      {
        const double shortfall = attainable_shortfall(dmu.target, pts, settings);
        if(shortfall > 1e-7) o.fail(fmt::format("{} {}: target outside AS by {}", where, dmu.id, shortfall));
        try
        {
          const double slack = pareto_slack(dmu.target, pts, probe);
          if(slack > 1e-6) o.fail(fmt::format("{} {}: pareto slack {}", where, dmu.id, slack));
        }
        catch(const std::exception & e)
        {
          o.fail(fmt::format("{} {}: {} (shortfall {})", where, dmu.id, e.what(), shortfall));
        }
        if(std::abs(g.hyperplane.evaluate(dmu.target)) > 1e-6)
          o.fail(fmt::format("{} {}: target off the common hyperplane", where, dmu.id));
        const auto & record = dataset.dmu(dmu.id);
        for(std::size_t r = 0; r < dmu.deviation.size(); ++r)
        {
          const double s = dmu.deviation[r];
          if(s < -record.values[r] - 1e-7 || s > reach[r] + 1e-7)
            o.fail(fmt::format("{} {}: deviation {} outside [-{}, {}]", where, dmu.id, s, record.values[r], reach[r]));
          if(!region_consistent(dmu.regions[r], s, dataset.schedule.ceiling(record, r)))
            o.fail(fmt::format("{} {}: region {} inconsistent with s = {}", where, dmu.id,
                               region_name(dmu.regions[r]), s));
        }
      }
      for(const auto & id : g.reference_set)
      {
        if(std::abs(g.hyperplane.evaluate(dataset.dmu(id).values)) > 1e-6)
          o.fail(fmt::format("{}: reference unit {} off the hyperplane", where, id));
      }
      if(std::abs(g.audited_objective - g.objective) > 1e-6)
        o.fail(fmt::format("{}: audit {} vs objective {}", where, g.audited_objective, g.objective));
      ++solved;
    }
  }
  if(o.pass) o.detail = fmt::format("{} groups in {} datasets", solved, cases.size());
  return o;
}

} // namespace

int main()
{
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
    {"Six-unit example", criterion_example},
    {"Extreme efficient set", criterion_efficient_set},
    {"Goal classification", criterion_goal_classes},
    {"Oracle equivalence", criterion_oracle},
    {"Payment properties", criterion_payments},
    {"Structural invariants", criterion_structure},
  };
  int failures = 0;
  for(std::size_t i = 0; i < criteria.size(); ++i)
  {
    Outcome o;
    try
    {
      o = criteria[i].second();
    }
    catch(const std::exception & e)
    {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << fmt::format("criterion {} [{}]: {} - {}\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                             o.detail);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
