#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "goalbench/solver.hpp"

namespace goalbench {

int LinearProgram::add_variable(std::string name, double lower, double upper, double cost, VarType type)
{
  columns_.push_back({std::move(name), lower, upper, cost, type});
  return column_count() - 1;
}

int LinearProgram::add_row(std::string name, std::span<const Term> terms, double lower, double upper)
{
  const int row = row_count();
  rows_.push_back({std::move(name), lower, upper});
  for(const auto & term : terms)
  {
    if(term.col < 0 || term.col >= column_count()) throw std::out_of_range("row term references unknown column");
    if(term.coef != 0.0) entries_.push_back({row, term.col, term.coef});
  }
  return row;
}

void LinearProgram::add_sos1(std::vector<int> members)
{
  for(int col : members)
  {
    if(col < 0 || col >= column_count()) throw std::out_of_range("SOS1 set references unknown column");
  }
  sos1_.push_back(std::move(members));
}

bool LinearProgram::has_binaries() const
{
  return std::any_of(columns_.begin(), columns_.end(), [](const Variable & v) { return v.type == VarType::Binary; });
}

std::vector<double> LinearProgram::row_activity(std::span<const double> x) const
{
  std::vector<double> activity(rows_.size(), 0.0);
  for(const auto & e : entries_) activity[e.row] += e.value * x[e.col];
  return activity;
}

double LinearProgram::max_violation(std::span<const double> x) const
{
  double worst = 0.0;
  const auto activity = row_activity(x);
  for(std::size_t i = 0; i < rows_.size(); ++i)
  {
    worst = std::max({worst, rows_[i].lower - activity[i], activity[i] - rows_[i].upper});
  }
  for(std::size_t c = 0; c < columns_.size(); ++c)
  {
    const auto & col = columns_[c];
    worst = std::max({worst, col.lower - x[c], x[c] - col.upper});
    if(col.type == VarType::Binary) worst = std::max(worst, std::abs(x[c] - std::round(x[c])));
  }
  return worst;
}

double LinearProgram::max_sos1_violation(std::span<const double> x) const
{
  double worst = 0.0;
  for(const auto & set : sos1_)
  {
    double first = 0.0;
    double second = 0.0;
    for(int col : set)
    {
      const double v = std::abs(x[col]);
      if(v > first)
      {
        second = first;
        first = v;
      }
      else if(v > second)
        second = v;
    }
    worst = std::max(worst, second);
  }
  return worst;
}

double LinearProgram::objective(std::span<const double> x) const
{
  double value = 0.0;
  for(std::size_t c = 0; c < columns_.size(); ++c) value += columns_[c].cost * x[c];
  return value;
}

namespace {

// CPLEX LP identifiers: letters, digits and a fixed punctuation set, not
// starting with a digit or a period.
std::string lp_name(const std::string & raw, const char * fallback, std::size_t index)
{
  static const std::string allowed = "!\"#$%&()/,.;?@_`'{}|~";
  std::string out;
  for(char c : raw)
  {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || allowed.find(c) != std::string::npos;
    out += ok ? c : '_';
  }
  if(out.empty()) out = fallback + std::to_string(index);
  if(std::isdigit(static_cast<unsigned char>(out[0])) || out[0] == '.') out = "_" + out;
  return out;
}

void write_number(std::ostream & os, double v)
{
  if(v == kInf)
    os << "+inf";
  else if(v == -kInf)
    os << "-inf";
  else
    os << v;
}

void write_linear(std::ostream & os, const std::vector<std::pair<int, double>> & terms, const std::vector<std::string> & names)
{
  if(terms.empty())
  {
    os << " 0 " << names.front();
    return;
  }
  for(const auto & [col, coef] : terms)
  {
    os << (coef < 0 ? " - " : " + ");
    const double a = std::abs(coef);
    if(a != 1.0) os << a << ' ';
    os << names[col];
  }
}

} // namespace

void LinearProgram::write_lp(std::ostream & os) const
{
  const auto old_precision = os.precision(17);
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for(std::size_t c = 0; c < columns_.size(); ++c) names.push_back(lp_name(columns_[c].name, "x", c));

  std::vector<std::vector<std::pair<int, double>>> by_row(rows_.size());
  for(const auto & e : entries_) by_row[e.row].emplace_back(e.col, e.value);

  os << "\\ written by goalbench\nMinimize\n obj:";
  std::vector<std::pair<int, double>> objective_terms;
  for(std::size_t c = 0; c < columns_.size(); ++c)
  {
    if(columns_[c].cost != 0.0) objective_terms.emplace_back(static_cast<int>(c), columns_[c].cost);
  }
  if(!columns_.empty()) write_linear(os, objective_terms, names);
  os << "\nSubject To\n";
  for(std::size_t i = 0; i < rows_.size(); ++i)
  {
    const auto & row = rows_[i];
    const std::string name = lp_name(row.name, "r", i);
    auto emit = [&](const std::string & label, const char * sense, double rhs) {
      os << ' ' << label << ':';
      write_linear(os, by_row[i], names);
      os << ' ' << sense << ' ';
      write_number(os, rhs);
      os << '\n';
    };
    if(row.lower == row.upper)
      emit(name, "=", row.lower);
    else if(std::isfinite(row.lower) && std::isfinite(row.upper))
    {
      emit(name + "_lo", ">=", row.lower);
      emit(name + "_up", "<=", row.upper);
    }
    else if(std::isfinite(row.lower))
      emit(name, ">=", row.lower);
    else if(std::isfinite(row.upper))
      emit(name, "<=", row.upper);
  }

  os << "Bounds\n";
  for(std::size_t c = 0; c < columns_.size(); ++c)
  {
    const auto & col = columns_[c];
    if(col.type == VarType::Binary) continue;
    if(col.lower == -kInf && col.upper == kInf)
      os << ' ' << names[c] << " free\n";
    else if(col.lower == 0.0 && col.upper == kInf)
      continue;
    else
    {
      os << ' ';
      write_number(os, col.lower);
      os << " <= " << names[c] << " <= ";
      write_number(os, col.upper);
      os << '\n';
    }
  }

  bool header = false;
  for(std::size_t c = 0; c < columns_.size(); ++c)
  {
    if(columns_[c].type != VarType::Binary) continue;
    if(!header) os << "Binaries\n";
    header = true;
    os << ' ' << names[c] << '\n';
  }

  if(!sos1_.empty())
  {
    os << "SOS\n";
    for(std::size_t k = 0; k < sos1_.size(); ++k)
    {
      os << " sos" << k << ": S1::";
      for(std::size_t m = 0; m < sos1_[k].size(); ++m) os << ' ' << names[sos1_[k][m]] << ':' << (m + 1);
      os << '\n';
    }
  }
  os << "End\n";
  os.precision(old_precision);
}

const char * status_name(SolveStatus status)
{
  switch(status)
  {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::NumericFailure: return "NumericFailure";
    case SolveStatus::Unavailable: return "Unavailable";
    case SolveStatus::Error: return "Error";
  }
  return "Unknown";
}

} // namespace goalbench
