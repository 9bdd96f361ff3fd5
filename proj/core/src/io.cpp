#include "goalbench/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace goalbench {

using json = nlohmann::ordered_json;

std::string to_string(const Issue & issue)
{
  std::string out = issue.file;
  if(issue.line > 0) out += ":" + std::to_string(issue.line);
  return out + ": " + issue.message;
}

namespace {

std::string join_issues(const std::vector<Issue> & issues)
{
  std::string out;
  for(const auto & issue : issues)
  {
    if(!out.empty()) out += "\n";
    out += to_string(issue);
  }
  return out;
}

std::string join_violations(const std::vector<Violation> & violations)
{
  std::string out;
  for(const auto & v : violations)
  {
    if(!out.empty()) out += "\n";
    out += to_string(v);
  }
  return out;
}

} // namespace

SchemaError::SchemaError(std::vector<Issue> issues)
: std::runtime_error(join_issues(issues)), issues_(std::move(issues))
{
}

ValidationFailed::ValidationFailed(std::vector<Violation> violations)
: std::runtime_error(join_violations(violations)), violations_(std::move(violations))
{
}

std::string to_string(const Violation & violation)
{
  std::string out = std::string("[") + rule_name(violation.rule) + "]";
  if(!violation.dmu_id.empty()) out += " dmu=" + violation.dmu_id;
  if(!violation.indicator_id.empty()) out += " indicator=" + violation.indicator_id;
  return out + ": " + violation.message;
}

std::vector<CsvRow> parse_csv(std::string_view text, const std::string & file)
{
  if(text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<CsvRow> rows;
  CsvRow row{1, {}};
  std::string cell;
  std::size_t line = 1;
  bool quoted = false;
  bool cell_started = false;

  auto end_row = [&] {
    row.cells.push_back(cell);
    cell.clear();
    const bool blank = row.cells.size() == 1 && row.cells[0].find_first_not_of(" \t") == std::string::npos;
    if(!blank) rows.push_back(std::move(row));
    row = CsvRow{line, {}};
    cell_started = false;
  };

  for(std::size_t i = 0; i < text.size(); ++i)
  {
    const char c = text[i];
    if(quoted)
    {
      if(c == '"')
      {
        if(i + 1 < text.size() && text[i + 1] == '"')
        {
          cell += '"';
          ++i;
        }
        else
          quoted = false;
      }
      else
      {
        if(c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    switch(c)
    {
      case '"':
        if(cell_started && cell.find_first_not_of(" \t") != std::string::npos)
          throw SchemaError({{file, line, "stray quote inside unquoted field"}});
        cell.clear();
        quoted = true;
        cell_started = true;
        break;
      case ',':
        row.cells.push_back(cell);
        cell.clear();
        cell_started = false;
        break;
      case '\r': break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        cell += c;
        cell_started = true;
        break;
    }
  }
  if(quoted) throw SchemaError({{file, line, "unterminated quoted field"}});
  if(cell_started || !cell.empty() || !row.cells.empty()) end_row();
  return rows;
}

namespace {

std::string trim(std::string s)
{
  const auto first = s.find_first_not_of(" \t");
  if(first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

struct Table
{
  std::string file;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  // Column position of `name`, recording an issue if it is missing.
  std::optional<std::size_t> column(const std::string & name, std::vector<Issue> & issues) const
  {
    auto it = std::find(header.begin(), header.end(), name);
    if(it == header.end())
    {
      issues.push_back({file, 1, "missing column '" + name + "'"});
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - header.begin());
  }
};

Table read_table(std::string_view text, const std::string & file, std::vector<Issue> & issues)
{
  Table table{file, {}, {}};
  auto rows = parse_csv(text, file);
  if(rows.empty())
  {
    issues.push_back({file, 1, "file is empty; a header row is mandatory"});
    return table;
  }
  for(auto & cell : rows.front().cells) table.header.push_back(trim(cell));
  table.rows.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  for(auto & row : table.rows)
  {
    for(auto & cell : row.cells) cell = trim(cell);
    if(row.cells.size() != table.header.size())
    {
      issues.push_back({file, row.line, "expected " + std::to_string(table.header.size()) + " cells, found "
                                            + std::to_string(row.cells.size())});
    }
  }
  return table;
}

std::optional<double> parse_number(const std::string & cell)
{
  if(cell.empty()) return std::nullopt;
  errno = 0;
  char * end = nullptr;
  const double value = std::strtod(cell.c_str(), &end);
  if(end != cell.c_str() + cell.size() || errno == ERANGE) return std::nullopt;
  return value;
}

double number_at(const Table & table, const CsvRow & row, std::size_t col, std::vector<Issue> & issues)
{
  const std::string & cell = col < row.cells.size() ? row.cells[col] : std::string{};
  auto value = parse_number(cell);
  if(!value)
  {
    issues.push_back({table.file, row.line,
                      "column '" + table.header[col] + "': '" + cell + "' is not a number"});
    return 0.0;
  }
  return *value;
}

} // namespace

Dataset parse_csv_dataset(std::string_view dmus_csv, std::string_view goals_csv, std::string_view weights_csv)
{
  std::vector<Issue> issues;
  const Table dmus = read_table(dmus_csv, "dmus.csv", issues);
  const Table goals = read_table(goals_csv, "goals.csv", issues);
  const Table weights = read_table(weights_csv, "weights.csv", issues);
  if(!issues.empty()) throw SchemaError(std::move(issues));

  Dataset dataset;
  const auto id_col = dmus.column("dmu_id", issues);
  const auto group_col = dmus.column("group_id", issues);
  const auto endowment_col = dmus.column("endowment", issues);
  if(!issues.empty()) throw SchemaError(std::move(issues));

  const std::set<std::string> fixed{"dmu_id", "group_id", "endowment"};
  std::vector<std::size_t> indicator_cols;
  for(std::size_t c = 0; c < dmus.header.size(); ++c)
  {
    if(fixed.count(dmus.header[c])) continue;
    if(dmus.header[c].empty())
    {
      issues.push_back({dmus.file, 1, "empty indicator column name"});
      continue;
    }
    indicator_cols.push_back(c);
    dataset.indicators.push_back({dmus.header[c], dmus.header[c], ""});
  }
  if(indicator_cols.empty()) issues.push_back({dmus.file, 1, "no indicator columns after dmu_id, group_id, endowment"});
  if(!issues.empty()) throw SchemaError(std::move(issues));

  std::map<std::string, std::size_t> line_of;
  for(const auto & row : dmus.rows)
  {
    if(row.cells.size() != dmus.header.size()) continue;
    DmuRecord dmu;
    dmu.id = row.cells[*id_col];
    dmu.group_id = row.cells[*group_col];
    if(dmu.id.empty()) issues.push_back({dmus.file, row.line, "empty dmu_id"});
    if(!line_of.emplace(dmu.id, row.line).second)
      issues.push_back({dmus.file, row.line, "duplicate dmu_id '" + dmu.id + "'"});
    dmu.endowment = number_at(dmus, row, *endowment_col, issues);
    for(std::size_t c : indicator_cols) dmu.values.push_back(number_at(dmus, row, c, issues));
    dataset.dmus.push_back(std::move(dmu));
  }

  // goals.csv: same indicator ids, any column order, every DMU exactly once.
  const auto goal_id_col = goals.column("dmu_id", issues);
  std::vector<std::size_t> goal_cols;
  for(const auto & ind : dataset.indicators)
  {
    auto col = goals.column(ind.id, issues);
    goal_cols.push_back(col.value_or(0));
  }
  for(std::size_t c = 0; c < goals.header.size(); ++c)
  {
    const auto & name = goals.header[c];
    if(name == "dmu_id") continue;
    if(std::none_of(dataset.indicators.begin(), dataset.indicators.end(), [&](const Indicator & i) { return i.id == name; }))
      issues.push_back({goals.file, 1, "unknown indicator column '" + name + "'"});
  }
  if(!issues.empty()) throw SchemaError(std::move(issues));

  std::set<std::string> with_goals;
  for(const auto & row : goals.rows)
  {
    if(row.cells.size() != goals.header.size()) continue;
    const auto & id = row.cells[*goal_id_col];
    auto j = dataset.find_dmu(id);
    if(!j)
    {
      issues.push_back({goals.file, row.line, "unknown DMU id '" + id + "'"});
      continue;
    }
    if(!with_goals.insert(id).second)
    {
      issues.push_back({goals.file, row.line, "duplicate goals for DMU '" + id + "'"});
      continue;
    }
    auto & dmu = dataset.dmus[*j];
    for(std::size_t c : goal_cols) dmu.goals.push_back(number_at(goals, row, c, issues));
  }
  for(const auto & dmu : dataset.dmus)
  {
    if(!with_goals.count(dmu.id)) issues.push_back({goals.file, 0, "no goals for DMU '" + dmu.id + "'"});
  }

  // weights.csv: one row per indicator.
  const auto weight_id_col = weights.column("indicator_id", issues);
  const auto weight_col = weights.column("weight", issues);
  if(!issues.empty()) throw SchemaError(std::move(issues));
  std::map<std::string, double> weight_of;
  for(const auto & row : weights.rows)
  {
    if(row.cells.size() != weights.header.size()) continue;
    const auto & id = row.cells[*weight_id_col];
    if(std::none_of(dataset.indicators.begin(), dataset.indicators.end(), [&](const Indicator & i) { return i.id == id; }))
    {
      issues.push_back({weights.file, row.line, "unknown indicator '" + id + "'"});
      continue;
    }
    const double w = number_at(weights, row, *weight_col, issues);
    if(!weight_of.emplace(id, w).second)
      issues.push_back({weights.file, row.line, "duplicate weight for indicator '" + id + "'"});
  }
  for(const auto & ind : dataset.indicators)
  {
    auto it = weight_of.find(ind.id);
    if(it == weight_of.end())
      issues.push_back({weights.file, 0, "no weight for indicator '" + ind.id + "'"});
    else
      dataset.schedule.weights.push_back(it->second);
  }
  if(!issues.empty()) throw SchemaError(std::move(issues));

  dataset.grouping = grouping_from_group_ids(dataset.dmus);
  return dataset;
}

namespace {

std::string slurp(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if(!in) throw SchemaError({{path.string(), 0, "cannot open file"}});
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<double> numbers(const json & node, const std::string & what)
{
  if(!node.is_array()) throw std::invalid_argument(what + " must be an array of numbers");
  std::vector<double> out;
  for(const auto & v : node)
  {
    if(!v.is_number()) throw std::invalid_argument(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string text(const json & node, const char * key, const std::string & fallback = {})
{
  if(!node.contains(key)) return fallback;
  if(!node[key].is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return node[key].get<std::string>();
}

const json & required(const json & node, const char * key, const std::string & where)
{
  if(!node.is_object() || !node.contains(key))
    throw std::invalid_argument(where + ": missing key '" + key + "'");
  return node[key];
}

} // namespace

Dataset parse_dataset_json(std::string_view text_in, const std::string & source)
{
  json root;
  try
  {
    root = json::parse(text_in);
  }
  catch(const json::parse_error & e)
  {
    // Report the line of the byte offset nlohmann points at.
    const std::size_t offset = std::min<std::size_t>(e.byte, text_in.size());
    const std::size_t line = 1 + std::count(text_in.begin(), text_in.begin() + offset, '\n');
    throw SchemaError({{source, line, e.what()}});
  }

  try
  {
    Dataset dataset;
    for(const auto & ind : required(root, "indicators", "dataset"))
    {
      if(ind.is_string())
        dataset.indicators.push_back({ind.get<std::string>(), ind.get<std::string>(), ""});
      else
      {
        const auto id = required(ind, "id", "indicator").get<std::string>();
        dataset.indicators.push_back({id, text(ind, "name", id), text(ind, "description")});
      }
    }
    for(const auto & node : required(root, "dmus", "dataset"))
    {
      DmuRecord dmu;
      dmu.id = required(node, "id", "dmu").get<std::string>();
      const std::string where = "dmu '" + dmu.id + "'";
      dmu.group_id = text(node, "group_id", dmu.id);
      dmu.values = numbers(required(node, "values", where), where + " values");
      dmu.goals = numbers(required(node, "goals", where), where + " goals");
      const auto & endowment = required(node, "endowment", where);
      if(!endowment.is_number()) throw std::invalid_argument(where + " endowment must be a number");
      dmu.endowment = endowment.get<double>();
      dataset.dmus.push_back(std::move(dmu));
    }

    const auto & schedule = required(root, "schedule", "dataset");
    dataset.schedule.weights = numbers(required(schedule, "weights", "schedule"), "schedule weights");
    if(schedule.contains("ceilings"))
    {
      const auto & ceilings = schedule["ceilings"];
      if(ceilings.is_string())
      {
        if(ceilings.get<std::string>() != "proportional")
          throw std::invalid_argument("schedule ceilings must be \"proportional\" or {\"explicit\": {...}}");
      }
      else
      {
        ExplicitCeilings explicit_ceilings;
        for(const auto & [id, values] : required(ceilings, "explicit", "schedule ceilings").items())
          explicit_ceilings.by_dmu[id] = numbers(values, "ceilings of '" + id + "'");
        dataset.schedule.ceilings = std::move(explicit_ceilings);
      }
    }
    if(schedule.contains("weight_overrides"))
    {
      for(const auto & [id, values] : schedule["weight_overrides"].items())
        dataset.schedule.weight_overrides[id] = numbers(values, "weight override of '" + id + "'");
    }

    if(root.contains("grouping"))
    {
      for(const auto & node : root["grouping"])
      {
        Group group;
        group.id = required(node, "id", "group").get<std::string>();
        for(const auto & member : required(node, "members", "group '" + group.id + "'"))
          group.members.push_back(member.get<std::string>());
        dataset.grouping.groups.push_back(std::move(group));
      }
    }
    else
      dataset.grouping = grouping_from_group_ids(dataset.dmus);
    return dataset;
  }
  catch(const json::exception & e)
  {
    throw SchemaError({{source, 0, e.what()}});
  }
  catch(const std::invalid_argument & e)
  {
    throw SchemaError({{source, 0, e.what()}});
  }
}

std::string dataset_to_json(const Dataset & dataset)
{
  json root;
  root["indicators"] = json::array();
  for(const auto & ind : dataset.indicators)
    root["indicators"].push_back({{"id", ind.id}, {"name", ind.name}, {"description", ind.description}});
  root["dmus"] = json::array();
  for(const auto & dmu : dataset.dmus)
  {
    root["dmus"].push_back({{"id", dmu.id},
                            {"group_id", dmu.group_id},
                            {"values", dmu.values},
                            {"goals", dmu.goals},
                            {"endowment", dmu.endowment}});
  }
  json schedule;
  schedule["weights"] = dataset.schedule.weights;
  if(const auto * explicit_ceilings = std::get_if<ExplicitCeilings>(&dataset.schedule.ceilings))
  {
    json by_dmu = json::object();
    for(const auto & [id, values] : explicit_ceilings->by_dmu) by_dmu[id] = values;
    schedule["ceilings"] = {{"explicit", by_dmu}};
  }
  else
    schedule["ceilings"] = "proportional";
  if(!dataset.schedule.weight_overrides.empty())
  {
    json overrides = json::object();
    for(const auto & [id, values] : dataset.schedule.weight_overrides) overrides[id] = values;
    schedule["weight_overrides"] = overrides;
  }
  root["schedule"] = schedule;
  root["grouping"] = json::array();
  for(const auto & group : dataset.grouping.groups)
    root["grouping"].push_back({{"id", group.id}, {"members", group.members}});
  return root.dump(2) + "\n";
}

Dataset read_dataset(const std::filesystem::path & path)
{
  std::error_code ec;
  if(std::filesystem::is_directory(path, ec))
  {
    const auto dmus = slurp(path / "dmus.csv");
    const auto goals = slurp(path / "goals.csv");
    const auto weights = slurp(path / "weights.csv");
    try
    {
      return parse_csv_dataset(dmus, goals, weights);
    }
    catch(const SchemaError & e)
    {
      auto issues = e.issues();
      for(auto & issue : issues) issue.file = (path / issue.file).string();
      throw SchemaError(std::move(issues));
    }
  }
  if(!std::filesystem::exists(path, ec)) throw SchemaError({{path.string(), 0, "no such file or directory"}});
  return parse_dataset_json(slurp(path), path.string());
}

Dataset load_dataset(const std::filesystem::path & path)
{
  Dataset dataset = read_dataset(path);
  auto violations = validate_dataset(dataset);
  if(!violations.empty()) throw ValidationFailed(std::move(violations));
  return dataset;
}

} // namespace goalbench
