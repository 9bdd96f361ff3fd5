#pragma once

#include <string>

#include "goalbench/solver.hpp"

namespace goalbench {

enum class GroupingMode
{
  PerFile,     ///< use the dataset's own grouping (group_id column)
  Singletons,  ///< one group per DMU
  SingleGroup, ///< every DMU in one group
};

struct EngineSettings
{
  double feasibility_tol = 1e-7;
  double efficiency_tol = 1e-6;
  double lambda_zero_tol = 1e-9;
  std::string solver = "highs";
  double time_limit = kInf;
  bool use_sos1 = true;
  GroupingMode grouping_mode = GroupingMode::PerFile;
  /// Among optimal targets, prefer the ones closest to actual performance.
  bool tie_break = true;
  /// Bound on u for the big-M fallback, as a multiple of max_j 1/y_rj.
  double bigm_u_factor = 1e4;
  /// Worker threads used to solve groups; 1 solves them in order.
  int jobs = 1;
};

/// Throws std::invalid_argument when a tolerance or limit is not positive.
void check_settings(const EngineSettings & settings);

} // namespace goalbench
