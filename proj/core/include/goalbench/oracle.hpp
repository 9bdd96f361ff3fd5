#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "goalbench/domain.hpp"
#include "goalbench/frontier.hpp"
#include "goalbench/settings.hpp"

namespace goalbench::oracle {

// Brute-force reference solver for desk-scale instances. It enumerates
// frontier facets and payment-region assignments and solves one small LP per
// combination. Nothing here is shared with the MILP builder.

inline constexpr std::size_t kMaxEfficient = 12;
inline constexpr std::size_t kMaxIndicators = 4;
inline constexpr std::size_t kMaxGroupCells = 12; ///< |J_g| * s

class GuardError : public std::length_error
{
public:
  using std::length_error::length_error;
};

struct FacetCandidate
{
  std::vector<std::string> spanning_ids;
  std::vector<double> normal;
  double offset = 0.0;
};

/// Maximal subsets of E lying on a common supporting hyperplane with a
/// strictly positive normal, sorted by their (sorted) member ids.
std::vector<FacetCandidate> enumerate_facets(const EfficientSet & efficient,
                                             const Dataset & dataset,
                                             const EngineSettings & settings = {});

struct OracleResult
{
  double objective = 0.0;
  std::vector<std::string> members;
  std::vector<std::vector<double>> targets;
  std::vector<std::string> facet;
};

/// Global optimum of the goal-adjusted benchmarking problem for `group`.
/// Given a facet the members decouple, so each member's 3^s region
/// assignments are enumerated separately and the per-member minima summed.
OracleResult solve_group(const Group & group,
                         const Dataset & dataset,
                         const EfficientSet & efficient,
                         const EngineSettings & settings = {});

/// True when the guards of enumerate_facets and solve_group hold.
bool within_guards(const Group & group, const Dataset & dataset, const EfficientSet & efficient);

} // namespace goalbench::oracle
