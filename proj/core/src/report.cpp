#include "goalbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "goalbench/payments.hpp"

namespace goalbench {

using json = nlohmann::ordered_json;

const char * format_name(ReportFormat format)
{
  switch(format)
  {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Text: return "text";
  }
  return "unknown";
}

std::optional<ReportFormat> parse_format(std::string_view name)
{
  for(auto format : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Text})
  {
    if(name == format_name(format)) return format;
  }
  return std::nullopt;
}

namespace {

std::vector<double> percent(const std::vector<double> & amounts, const std::vector<double> & available)
{
  std::vector<double> out;
  for(std::size_t r = 0; r < amounts.size(); ++r) out.push_back(100.0 * amounts[r] / available[r]);
  return out;
}

} // namespace

PaymentReport make_report(const std::vector<GroupSolution> & solutions, const Dataset & dataset)
{
  PaymentReport report;
  for(const auto & ind : dataset.indicators) report.indicators.push_back(ind.id);

  std::map<std::string, DmuReport> by_id;
  for(const auto & solution : solutions)
  {
    GroupReport group;
    group.id = solution.group_id;
    group.status = status_name(solution.status);
    group.members = solution.members;
    group.reference_set = solution.reference_set;
    group.normal = solution.hyperplane.normal;
    group.offset = solution.hyperplane.offset;
    group.objective = solution.objective;
    group.audited_objective = solution.audited_objective;
    group.warnings = solution.warnings;
    group.message = solution.message;
    report.groups.push_back(group);

    std::map<std::string, const DmuOutcome *> outcome_of;
    for(const auto & outcome : solution.dmus) outcome_of[outcome.id] = &outcome;

    for(const auto & id : solution.members)
    {
      const auto & dmu = dataset.dmu(id);
      DmuReport row;
      row.id = id;
      row.group_id = solution.group_id;
      row.endowment = dmu.endowment;
      row.actual = dmu.values;
      row.goals = dmu.goals;
      for(std::size_t r = 0; r < dmu.values.size(); ++r)
        row.available.push_back(dmu.endowment * dataset.schedule.weight(dmu, r));

      PaymentBreakdown vs_goals;
      auto it = outcome_of.find(id);
      if(it != outcome_of.end())
      {
        const DmuOutcome & outcome = *it->second;
        row.target = outcome.target;
        row.pay_targets = outcome.vs_targets.per_indicator;
        row.total_targets = outcome.vs_targets.total;
        row.rate_targets = 100.0 * outcome.vs_targets.total / dmu.endowment;
        row.indicator_rate_targets = percent(row.pay_targets, row.available);
        row.goal_class = outcome.goal_class;
        row.reference_set = solution.reference_set;
        vs_goals = outcome.vs_goals;
      }
      else
      {
        std::vector<double> deviation;
        for(std::size_t r = 0; r < dmu.values.size(); ++r) deviation.push_back(dmu.goals[r] - dmu.values[r]);
        vs_goals = total_payment(deviation, dmu, dataset.schedule);
      }
      row.pay_goals = vs_goals.per_indicator;
      row.total_goals = vs_goals.total;
      row.rate_goals = 100.0 * vs_goals.total / dmu.endowment;
      row.indicator_rate_goals = percent(row.pay_goals, row.available);
      by_id[id] = std::move(row);
    }
  }

  for(const auto & dmu : dataset.dmus)
  {
    auto it = by_id.find(dmu.id);
    if(it != by_id.end()) report.dmus.push_back(std::move(it->second));
  }
  return report;
}

namespace {

// ---------------------------------------------------------------- json

json number(double value)
{
  if(!std::isfinite(value)) return nullptr;
  return value;
}

json numbers(const std::vector<double> & values)
{
  json out = json::array();
  for(double v : values) out.push_back(number(v));
  return out;
}

json payment_block(const std::vector<double> & per_indicator,
                   double total,
                   double rate,
                   const std::vector<double> & indicator_rates)
{
  return {{"per_indicator", numbers(per_indicator)},
          {"total", number(total)},
          {"rate", number(rate)},
          {"indicator_rates", numbers(indicator_rates)}};
}

std::string render_json(const PaymentReport & report)
{
  json root;
  root["indicators"] = report.indicators;
  root["groups"] = json::array();
  for(const auto & g : report.groups)
  {
    root["groups"].push_back({{"id", g.id},
                              {"status", g.status},
                              {"members", g.members},
                              {"reference_set", g.reference_set},
                              {"hyperplane", {{"normal", numbers(g.normal)}, {"offset", number(g.offset)}}},
                              {"objective", number(g.objective)},
                              {"audited_objective", number(g.audited_objective)},
                              {"warnings", g.warnings},
                              {"message", g.message}});
  }
  root["dmus"] = json::array();
  for(const auto & d : report.dmus)
  {
    json node;
    node["id"] = d.id;
    node["group_id"] = d.group_id;
    node["goal_class"] = d.goal_class ? json(goal_class_name(*d.goal_class)) : json(nullptr);
    node["endowment"] = number(d.endowment);
    node["actual"] = numbers(d.actual);
    node["target"] = d.has_targets() ? numbers(d.target) : json(nullptr);
    node["goals"] = numbers(d.goals);
    node["available"] = numbers(d.available);
    node["payments"] = {
      {"targets",
       d.has_targets() ? payment_block(d.pay_targets, d.total_targets, d.rate_targets, d.indicator_rate_targets)
                       : json(nullptr)},
      {"goals", payment_block(d.pay_goals, d.total_goals, d.rate_goals, d.indicator_rate_goals)}};
    node["reference_set"] = d.reference_set;
    root["dmus"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

double read_number(const json & node)
{
  if(node.is_null()) return std::nan("");
  if(!node.is_number()) throw std::invalid_argument("report: expected a number, got " + node.dump());
  return node.get<double>();
}

std::vector<double> read_numbers(const json & node)
{
  std::vector<double> out;
  for(const auto & v : node) out.push_back(read_number(v));
  return out;
}

GoalClass read_goal_class(const std::string & name)
{
  for(auto c : {GoalClass::OutsideAS, GoalClass::InteriorOfAS, GoalClass::OnParetoFrontier})
  {
    if(name == goal_class_name(c)) return c;
  }
  throw std::invalid_argument("report: unknown goal class '" + name + "'");
}

// ---------------------------------------------------------------- csv

std::string shortest(double value)
{
  if(!std::isfinite(value)) return "";
  return fmt::format("{}", value);
}

std::string csv_cell(const std::string & text)
{
  if(text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for(char c : text)
  {
    if(c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string> & items, const char * separator)
{
  std::string out;
  for(const auto & item : items)
  {
    if(!out.empty()) out += separator;
    out += item;
  }
  return out;
}

std::string render_csv(const PaymentReport & report)
{
  std::vector<std::string> header{"group_id", "dmu_id", "row", "goal_class"};
  for(const auto & ind : report.indicators) header.push_back(ind);
  for(const auto & ind : report.indicators) header.push_back("pay_" + ind);
  for(const auto & ind : report.indicators) header.push_back("rate_" + ind);
  for(const char * name : {"total", "rate", "reference_set"}) header.push_back(name);

  std::string out;
  std::vector<std::string> cells;
  for(const auto & h : header) cells.push_back(csv_cell(h));
  out += join(cells, ",") + "\n";

  const std::size_t s = report.indicators.size();
  auto emit = [&](const DmuReport & d,
                  const char * kind,
                  const std::vector<double> & values,
                  const std::vector<double> & pay,
                  const std::vector<double> & rates,
                  double total,
                  std::optional<double> rate) {
    cells = {csv_cell(d.group_id), csv_cell(d.id), kind,
             d.goal_class ? goal_class_name(*d.goal_class) : ""};
    for(std::size_t r = 0; r < s; ++r) cells.push_back(r < values.size() ? shortest(values[r]) : "");
    for(std::size_t r = 0; r < s; ++r) cells.push_back(r < pay.size() ? shortest(pay[r]) : "");
    for(std::size_t r = 0; r < s; ++r) cells.push_back(r < rates.size() ? shortest(rates[r]) : "");
    cells.push_back(shortest(total));
    cells.push_back(rate ? shortest(*rate) : "");
    cells.push_back(csv_cell(join(d.reference_set, ";")));
    out += join(cells, ",") + "\n";
  };

  for(const auto & d : report.dmus)
  {
    emit(d, "actual", d.actual, d.available, {}, d.endowment, std::nullopt);
    if(d.has_targets())
      emit(d, "targets", d.target, d.pay_targets, d.indicator_rate_targets, d.total_targets, d.rate_targets);
    else
      emit(d, "targets", {}, {}, {}, std::nan(""), std::nullopt);
    emit(d, "goals", d.goals, d.pay_goals, d.indicator_rate_goals, d.total_goals, d.rate_goals);
  }
  return out;
}

// ---------------------------------------------------------------- text

std::string fixed(double value, int decimals)
{
  if(!std::isfinite(value)) return "-";
  std::string out = fmt::format("{:.{}f}", value, decimals);
  if(out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
  return out;
}

// Indicator levels: up to two decimals, trailing zeros dropped.
std::string level(double value)
{
  std::string out = fixed(value, 2);
  if(out.find('.') != std::string::npos)
  {
    while(out.back() == '0') out.pop_back();
    if(out.back() == '.') out.pop_back();
  }
  return out;
}

std::string general(double value)
{
  return level(value) == fixed(value, 6) ? level(value) : fmt::format("{:.6g}", value);
}

std::string hyperplane_text(const GroupReport & group, const std::vector<std::string> & indicators)
{
  if(group.normal.empty()) return "-";
  std::string lhs;
  for(std::size_t r = 0; r < group.normal.size() && r < indicators.size(); ++r)
  {
    if(!lhs.empty()) lhs += " + ";
    lhs += general(group.normal[r]) + "*" + indicators[r];
  }
  return lhs + " = " + general(-group.offset);
}

std::string render_text(const PaymentReport & report)
{
  if(report.dmus.empty() && report.groups.empty()) return "No results.\n";

  const auto & ind = report.indicators;
  const int label = 8;
  std::size_t id_width = 3;
  for(const auto & d : report.dmus) id_width = std::max(id_width, d.id.size());
  std::size_t level_width = 6;
  for(const auto & name : ind) level_width = std::max(level_width, name.size());
  for(const auto & d : report.dmus)
  {
    for(const auto * v : {&d.actual, &d.target, &d.goals})
    {
      for(double x : *v) level_width = std::max(level_width, level(x).size());
    }
  }
  std::size_t money_width = 9;
  for(const auto & d : report.dmus) money_width = std::max(money_width, fixed(d.endowment, 2).size() + 1);

  std::string header = fmt::format("{:<{}}  {:<{}}", "DMU", id_width, "Data", label);
  for(const auto & name : ind) header += fmt::format("{:>{}}", name, level_width + 1);
  header += fmt::format("  |  {:<{}}", "Payments", label + 2);
  for(const auto & name : ind) header += fmt::format("{:>{}}", name, money_width);
  header += fmt::format("{:>{}}{:>8}", "Total", money_width, "Rate");

  auto line = [&](const std::string & id,
                  const std::string & kind,
                  const std::vector<double> & values,
                  const std::string & pay_kind,
                  const std::vector<double> & pay,
                  double total,
                  std::optional<double> rate) {
    std::string out = fmt::format("{:<{}}  {:<{}}", id, id_width, kind, label);
    for(std::size_t r = 0; r < ind.size(); ++r)
      out += fmt::format("{:>{}}", r < values.size() ? level(values[r]) : "-", level_width + 1);
    out += fmt::format("  |  {:<{}}", pay_kind, label + 2);
    for(std::size_t r = 0; r < ind.size(); ++r)
      out += fmt::format("{:>{}}", r < pay.size() ? fixed(pay[r], 2) : "-", money_width);
    out += fmt::format("{:>{}}", fixed(total, 2), money_width);
    if(rate) out += fmt::format("{:>8}", fixed(*rate, 1) + "%");
    while(!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };

  std::string out;
  bool any_outside = false;
  for(const auto & group : report.groups)
  {
    out += "Group " + group.id + "  [" + group.status + "]\n";
    if(!group.reference_set.empty())
      out += "  reference set: " + join(group.reference_set, ", ") + "\n";
    if(!group.normal.empty()) out += "  hyperplane: " + hyperplane_text(group, ind) + "\n";
    if(group.members.size() > 1 && !group.reference_set.empty())
    {
      out += "  all " + std::to_string(group.members.size())
             + " DMUs are benchmarked against the same facet of the frontier\n";
    }
    if(!group.message.empty() && group.status != "Optimal") out += "  note: " + group.message + "\n";
    for(const auto & w : group.warnings) out += "  warning: " + w + "\n";
    out += header + "\n";
    for(const auto & d : report.dmus)
    {
      if(d.group_id != group.id) continue;
      const bool outside = d.goal_class == GoalClass::OutsideAS;
      any_outside = any_outside || outside;
      out += line(d.id, "Actual", d.actual, "Available", d.available, d.endowment, std::nullopt);
      if(d.has_targets())
        out += line("", "Targets", d.target, "Targets", d.pay_targets, d.total_targets, d.rate_targets);
      else
        out += line("", "Targets", {}, "Targets", {}, std::nan(""), std::nullopt);
      out += line("", outside ? "Goals*" : "Goals", d.goals, "Goals", d.pay_goals, d.total_goals, d.rate_goals);
    }
    out += "\n";
  }
  if(any_outside) out += "* Goals outside the attainable set.\n";
  else if(!out.empty()) out.pop_back();
  return out;
}

} // namespace

std::string render_report(const PaymentReport & report, ReportFormat format)
{
  switch(format)
  {
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Text: return render_text(report);
  }
  return {};
}

std::string render_report(const std::vector<GroupSolution> & solutions, const Dataset & dataset, ReportFormat format)
{
  return render_report(make_report(solutions, dataset), format);
}

PaymentReport parse_report_json(std::string_view text)
{
  try
  {
    const json root = json::parse(text);
    PaymentReport report;
    report.indicators = root.at("indicators").get<std::vector<std::string>>();
    for(const auto & node : root.at("groups"))
    {
      GroupReport g;
      g.id = node.at("id").get<std::string>();
      g.status = node.at("status").get<std::string>();
      g.members = node.at("members").get<std::vector<std::string>>();
      g.reference_set = node.at("reference_set").get<std::vector<std::string>>();
      g.normal = read_numbers(node.at("hyperplane").at("normal"));
      g.offset = read_number(node.at("hyperplane").at("offset"));
      g.objective = read_number(node.at("objective"));
      g.audited_objective = read_number(node.at("audited_objective"));
      g.warnings = node.at("warnings").get<std::vector<std::string>>();
      g.message = node.at("message").get<std::string>();
      report.groups.push_back(std::move(g));
    }
    for(const auto & node : root.at("dmus"))
    {
      DmuReport d;
      d.id = node.at("id").get<std::string>();
      d.group_id = node.at("group_id").get<std::string>();
      if(!node.at("goal_class").is_null()) d.goal_class = read_goal_class(node.at("goal_class").get<std::string>());
      d.endowment = read_number(node.at("endowment"));
      d.actual = read_numbers(node.at("actual"));
      if(!node.at("target").is_null()) d.target = read_numbers(node.at("target"));
      d.goals = read_numbers(node.at("goals"));
      d.available = read_numbers(node.at("available"));
      const auto & payments = node.at("payments");
      if(!payments.at("targets").is_null())
      {
        const auto & t = payments.at("targets");
        d.pay_targets = read_numbers(t.at("per_indicator"));
        d.total_targets = read_number(t.at("total"));
        d.rate_targets = read_number(t.at("rate"));
        d.indicator_rate_targets = read_numbers(t.at("indicator_rates"));
      }
      const auto & g = payments.at("goals");
      d.pay_goals = read_numbers(g.at("per_indicator"));
      d.total_goals = read_number(g.at("total"));
      d.rate_goals = read_number(g.at("rate"));
      d.indicator_rate_goals = read_numbers(g.at("indicator_rates"));
      d.reference_set = node.at("reference_set").get<std::vector<std::string>>();
      report.dmus.push_back(std::move(d));
    }
    return report;
  }
  catch(const json::exception & e)
  {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
}

} // namespace goalbench
