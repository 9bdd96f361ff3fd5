#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "goalbench/domain.hpp"

namespace goalbench {

/// A schema problem in an input file. `line` is 1-based; 0 when not tied to
/// a line.
struct Issue
{
  std::string file;
  std::size_t line = 0;
  std::string message;
};

std::string to_string(const Issue & issue);

/// The input could not be read or does not match the expected schema.
class SchemaError : public std::runtime_error
{
public:
  explicit SchemaError(std::vector<Issue> issues);
  const std::vector<Issue> & issues() const { return issues_; }

private:
  std::vector<Issue> issues_;
};

/// The input was well formed but breaks dataset invariants.
class ValidationFailed : public std::runtime_error
{
public:
  explicit ValidationFailed(std::vector<Violation> violations);
  const std::vector<Violation> & violations() const { return violations_; }

private:
  std::vector<Violation> violations_;
};

std::string to_string(const Violation & violation);

/// Parses a dataset from a directory holding dmus.csv, goals.csv and
/// weights.csv, or from a single JSON file. Throws SchemaError. The result is
/// not validated.
Dataset read_dataset(const std::filesystem::path & path);

/// read_dataset followed by validate_dataset; throws ValidationFailed when
/// any invariant is broken.
Dataset load_dataset(const std::filesystem::path & path);

/// CSV trio given as text. File names are only used in messages.
Dataset parse_csv_dataset(std::string_view dmus_csv, std::string_view goals_csv, std::string_view weights_csv);

Dataset parse_dataset_json(std::string_view text, const std::string & source = "dataset.json");
std::string dataset_to_json(const Dataset & dataset);

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF, and a UTF-8
/// byte order mark. Blank lines are skipped; each row keeps its line number.
struct CsvRow
{
  std::size_t line;
  std::vector<std::string> cells;
};
std::vector<CsvRow> parse_csv(std::string_view text, const std::string & file);

} // namespace goalbench
