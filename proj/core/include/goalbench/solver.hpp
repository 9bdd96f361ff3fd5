#pragma once

#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace goalbench {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType
{
  Continuous,
  Binary,
};

struct Variable
{
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
  VarType type = VarType::Continuous;
};

/// Row `lower <= sum(coef * x) <= upper`; equality when lower == upper.
struct Row
{
  std::string name;
  double lower = -kInf;
  double upper = kInf;
};

/// Nonzero of the constraint matrix in triplet form.
struct Entry
{
  int row;
  int col;
  double value;
};

struct Term
{
  int col;
  double coef;
};

/// Minimisation problem with continuous and binary columns, linear rows and
/// SOS1 sets (at most one member nonzero). Columns and rows are addressed by
/// the index returned when they were added.
class LinearProgram
{
public:
  int add_variable(std::string name,
                   double lower = 0.0,
                   double upper = kInf,
                   double cost = 0.0,
                   VarType type = VarType::Continuous);
  int add_binary(std::string name, double cost = 0.0) { return add_variable(std::move(name), 0.0, 1.0, cost, VarType::Binary); }
  int add_row(std::string name, std::span<const Term> terms, double lower, double upper);
  int add_row(std::string name, std::initializer_list<Term> terms, double lower, double upper)
  {
    return add_row(std::move(name), std::span<const Term>(terms.begin(), terms.size()), lower, upper);
  }
  void add_sos1(std::vector<int> members);
  void set_cost(int col, double cost) { columns_[col].cost = cost; }
  void set_bounds(int col, double lower, double upper)
  {
    columns_[col].lower = lower;
    columns_[col].upper = upper;
  }

  int column_count() const { return static_cast<int>(columns_.size()); }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<Variable> & columns() const { return columns_; }
  const std::vector<Row> & rows() const { return rows_; }
  const std::vector<Entry> & entries() const { return entries_; }
  const std::vector<std::vector<int>> & sos1_sets() const { return sos1_; }
  bool has_binaries() const;

  /// Row activities A x.
  std::vector<double> row_activity(std::span<const double> x) const;
  /// Largest violation of any row, column bound, or integrality requirement.
  double max_violation(std::span<const double> x) const;
  /// Largest SOS1 violation: the second largest |x| found in any set.
  double max_sos1_violation(std::span<const double> x) const;
  double objective(std::span<const double> x) const;

  /// Writes the problem in CPLEX LP text format.
  void write_lp(std::ostream & os) const;

private:
  std::vector<Variable> columns_;
  std::vector<Row> rows_;
  std::vector<Entry> entries_;
  std::vector<std::vector<int>> sos1_;
};

enum class SolveStatus
{
  Optimal,
  Infeasible,
  Unbounded,
  TimeLimit,
  NumericFailure,
  Unavailable,
  Error,
};

const char * status_name(SolveStatus status);

struct SolveLimits
{
  double time_limit = kInf; ///< seconds
  double mip_gap = 0.0;
  double integrality_tolerance = 1e-6;
};

struct SolveResult
{
  SolveStatus status = SolveStatus::Error;
  std::vector<double> values;
  double objective = kInf;
  std::string message;

  bool optimal() const { return status == SolveStatus::Optimal; }
  /// A time-limited solve may still carry a feasible incumbent.
  bool has_solution() const { return !values.empty(); }
};

struct SolverCapabilities
{
  bool supports_sos1 = false;
  bool supports_binaries = false;
  bool deterministic = false;
};

class SolverBackend
{
public:
  virtual ~SolverBackend() = default;
  virtual std::string_view id() const = 0;
  virtual SolverCapabilities capabilities() const = 0;
  /// Solves `problem` to proven optimality within `limits`. Backends without
  /// SOS1 support return Error when the problem carries SOS1 sets.
  virtual SolveResult solve(const LinearProgram & problem, const SolveLimits & limits) = 0;
};

/// Known backend ids: "highs" (SOS1 by branching) and "highs-bigm" (same
/// engine, advertises no SOS1 support). Thread-safe; every call returns a
/// fresh instance. Throws std::invalid_argument for unknown ids.
std::unique_ptr<SolverBackend> make_backend(std::string_view id);
std::vector<std::string> backend_ids();

} // namespace goalbench
