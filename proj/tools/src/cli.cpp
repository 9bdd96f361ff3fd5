#include "goalbench/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "goalbench/benchmarking.hpp"
#include "goalbench/frontier.hpp"
#include "goalbench/io.hpp"
#include "goalbench/oracle.hpp"
#include "goalbench/report.hpp"

namespace goalbench::cli {

namespace {

constexpr double kOracleTolerance = 1e-6;

struct Options
{
  std::string data;
  std::string format = "text";
  std::string out;
  std::string grouping = "per-file";
  std::string dump_lp;
  bool oracle_check = false;
  bool no_sos1 = false;
  bool no_tie_break = false;
  EngineSettings settings;
};

void add_data(CLI::App & cmd, Options & o)
{
  cmd.add_option("--data", o.data, "Dataset directory (dmus.csv, goals.csv, weights.csv) or JSON file")
    ->required()
    ->envname("GOALBENCH_DATA");
}

void add_engine(CLI::App & cmd, Options & o)
{
  cmd.add_option("--tol-feas", o.settings.feasibility_tol, "Feasibility tolerance")
    ->envname("GOALBENCH_TOL_FEAS")
    ->capture_default_str();
  cmd.add_option("--tol-eff", o.settings.efficiency_tol, "Efficiency tolerance")
    ->envname("GOALBENCH_TOL_EFF")
    ->capture_default_str();
  cmd.add_option("--solver", o.settings.solver, "Solver backend")
    ->envname("GOALBENCH_SOLVER")
    ->check(CLI::IsMember(backend_ids()))
    ->capture_default_str();
}

GroupingMode grouping_mode(const std::string & name)
{
  static const std::map<std::string, GroupingMode> modes{
    {"per-file", GroupingMode::PerFile},
    {"singletons", GroupingMode::Singletons},
    {"single-group", GroupingMode::SingleGroup},
  };
  return modes.at(name);
}

// Loads and validates; on failure prints diagnostics and returns the exit
// code to use.
std::optional<int> load(const std::string & path, Dataset & dataset, std::ostream & err)
{
  try
  {
    dataset = load_dataset(path);
    return std::nullopt;
  }
  catch(const SchemaError & e)
  {
    for(const auto & issue : e.issues()) err << "error: " << to_string(issue) << "\n";
    return kInput;
  }
  catch(const ValidationFailed & e)
  {
    for(const auto & v : e.violations()) err << "violation: " << to_string(v) << "\n";
    return kValidation;
  }
}

std::optional<int> emit(const std::string & text, const std::string & path, std::ostream & out, std::ostream & err)
{
  if(path.empty())
  {
    out << text;
    return std::nullopt;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if(!file)
  {
    err << "error: cannot write " << path << "\n";
    return kInput;
  }
  return std::nullopt;
}

int cmd_validate(const Options & o, std::ostream & out, std::ostream & err)
{
  Dataset dataset;
  if(auto code = load(o.data, dataset, err)) return *code;
  out << fmt::format("{}: {} DMUs, {} indicators, {} groups; no violations\n", o.data, dataset.dmu_count(),
                     dataset.indicator_count(), dataset.grouping.groups.size());
  return kOk;
}

std::string vector_text(const std::vector<double> & values)
{
  std::string out = "(";
  for(std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + fmt::format("{}", values[i]);
  return out + ")";
}

int cmd_frontier(const Options & o, std::ostream & out, std::ostream & err)
{
  Dataset dataset;
  if(auto code = load(o.data, dataset, err)) return *code;
  try
  {
    check_settings(o.settings);
    const auto efficient = extreme_efficient_set(dataset, o.settings);
    std::string text;
    if(o.format == "json")
    {
      text = "{\n  \"efficient_set\": [";
      for(std::size_t k = 0; k < efficient.size(); ++k) text += (k ? ", \"" : "\"") + efficient.members[k] + "\"";
      text += "],\n  \"goal_classes\": {";
      for(std::size_t j = 0; j < dataset.dmus.size(); ++j)
      {
        const auto & dmu = dataset.dmus[j];
        text += fmt::format("{}\n    \"{}\": \"{}\"", j ? "," : "", dmu.id,
                            goal_class_name(classify_goal(dmu.goals, efficient, o.settings)));
      }
      text += "\n  }\n}\n";
    }
    else
    {
      std::string ids;
      for(const auto & id : efficient.members) ids += (ids.empty() ? "" : ", ") + id;
      text = "Extreme efficient set E = {" + ids + "}\n\n";
      std::size_t width = 3;
      for(const auto & dmu : dataset.dmus) width = std::max(width, dmu.id.size());
      text += fmt::format("{:<{}}  {:<20}  {:<20}  {}\n", "DMU", width, "Actual", "Goals", "Goal class");
      for(const auto & dmu : dataset.dmus)
      {
        text += fmt::format("{:<{}}  {:<20}  {:<20}  {}\n", dmu.id, width, vector_text(dmu.values),
                            vector_text(dmu.goals), goal_class_name(classify_goal(dmu.goals, efficient, o.settings)));
      }
    }
    if(auto code = emit(text, o.out, out, err)) return *code;
    return kOk;
  }
  catch(const std::invalid_argument & e)
  {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  catch(const std::exception & e)
  {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }
}

std::string file_stem(const std::string & id)
{
  std::string out;
  for(char c : id) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  return out.empty() ? "group" : out;
}

int cmd_evaluate(Options o, std::ostream & out, std::ostream & err)
{
  Dataset dataset;
  if(auto code = load(o.data, dataset, err)) return *code;
  o.settings.grouping_mode = grouping_mode(o.grouping);
  o.settings.use_sos1 = !o.no_sos1;
  o.settings.tie_break = !o.no_tie_break;
  const auto format = parse_format(o.format);

  Analysis analysis;
  try
  {
    check_settings(o.settings);
    analysis = run_analysis(dataset, o.settings);
  }
  catch(const std::invalid_argument & e)
  {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  catch(const std::exception & e)
  {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }

  if(!o.dump_lp.empty())
  {
    std::error_code ec;
    std::filesystem::create_directories(o.dump_lp, ec);
    const auto capabilities = make_backend(o.settings.solver)->capabilities();
    for(const auto & group : analysis.grouping.groups)
    {
      const auto path = std::filesystem::path(o.dump_lp) / (file_stem(group.id) + ".lp");
      std::ofstream file(path);
      try
      {
        build_problem(group, dataset, analysis.efficient, o.settings, capabilities).lp.write_lp(file);
      }
      catch(const std::exception & e)
      {
        err << "warning: no model for group " << group.id << ": " << e.what() << "\n";
      }
      if(!file)
      {
        err << "error: cannot write " << path.string() << "\n";
        return kInput;
      }
    }
  }

  if(auto code = emit(render_report(analysis.groups, dataset, *format), o.out, out, err)) return *code;

  int code = kOk;
  if(!analysis.all_optimal())
  {
    err << fmt::format("{:<16} {:<16} {}\n", "group", "status", "message");
    for(const auto & g : analysis.groups)
      err << fmt::format("{:<16} {:<16} {}\n", g.group_id, status_name(g.status), g.message);
    code = kSolver;
  }

  if(o.oracle_check)
  {
    for(std::size_t g = 0; g < analysis.groups.size(); ++g)
    {
      const auto & group = analysis.grouping.groups[g];
      const auto & solution = analysis.groups[g];
      if(!solution.optimal()) continue;
      if(!oracle::within_guards(group, dataset, analysis.efficient))
      {
        err << "oracle-check: group " << group.id << " skipped (instance exceeds oracle guards)\n";
        continue;
      }
      try
      {
        const auto reference = oracle::solve_group(group, dataset, analysis.efficient, o.settings);
        const double gap = std::abs(reference.objective - solution.objective);
        if(gap > kOracleTolerance)
        {
          err << fmt::format("oracle-check: MISMATCH in group {}: model {} vs oracle {} (|diff| = {:.3g})\n",
                             group.id, solution.objective, reference.objective, gap);
          code = kSolver;
        }
        else
          err << fmt::format("oracle-check: group {} ok (objective {})\n", group.id, solution.objective);
      }
      catch(const std::exception & e)
      {
        err << "oracle-check: group " << group.id << " failed: " << e.what() << "\n";
        code = kSolver;
      }
    }
  }
  return code;
}

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Goal-adjusted DEA benchmarking for pay-for-performance incentive plans", "goalbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "goalbench 0.1.0");

  Options o;
  auto * validate = app.add_subcommand("validate", "Load a dataset and check its invariants");
  add_data(*validate, o);

  auto * frontier = app.add_subcommand("frontier", "Print the extreme efficient set and goal classes");
  add_data(*frontier, o);
  add_engine(*frontier, o);
  frontier->add_option("--format", o.format, "text or json")
    ->envname("GOALBENCH_FORMAT")
    ->check(CLI::IsMember({"text", "json"}))
    ->capture_default_str();
  frontier->add_option("--out", o.out, "Write output to this file")->envname("GOALBENCH_OUT");

  auto * evaluate = app.add_subcommand("evaluate", "Compute targets and incentive payments");
  add_data(*evaluate, o);
  add_engine(*evaluate, o);
  evaluate->add_option("--format", o.format, "json, csv or text")
    ->envname("GOALBENCH_FORMAT")
    ->check(CLI::IsMember({"json", "csv", "text"}))
    ->capture_default_str();
  evaluate->add_option("--out", o.out, "Write the report to this file")->envname("GOALBENCH_OUT");
  evaluate->add_option("--grouping", o.grouping, "per-file, singletons or single-group")
    ->envname("GOALBENCH_GROUPING")
    ->check(CLI::IsMember({"per-file", "singletons", "single-group"}))
    ->capture_default_str();
  evaluate->add_option("--time-limit", o.settings.time_limit, "Seconds per solve")
    ->envname("GOALBENCH_TIME_LIMIT")
    ->check(CLI::PositiveNumber);
  evaluate->add_flag("--no-sos1", o.no_sos1, "Use the big-M formulation instead of SOS1 sets")
    ->envname("GOALBENCH_NO_SOS1");
  evaluate->add_flag("--no-tie-break", o.no_tie_break, "Keep the first optimal solution the solver returns")
    ->envname("GOALBENCH_NO_TIE_BREAK");
  evaluate->add_option("--jobs", o.settings.jobs, "Groups solved in parallel")
    ->envname("GOALBENCH_JOBS")
    ->check(CLI::Range(1, 256));
  evaluate->add_option("--dump-lp", o.dump_lp, "Write each group model in LP format to this directory")
    ->envname("GOALBENCH_DUMP_LP");
  evaluate->add_flag("--oracle-check", o.oracle_check, "Cross-check each group against brute-force enumeration")
    ->envname("GOALBENCH_ORACLE_CHECK")
    ->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch(const CLI::ParseError & e)
  {
    // Help and version requests come through here with exit code 0.
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  if(validate->parsed()) return cmd_validate(o, out, err);
  if(frontier->parsed()) return cmd_frontier(o, out, err);
  return cmd_evaluate(o, out, err);
}

} // namespace goalbench::cli
