#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "goalbench/domain.hpp"

namespace goalbench::fixtures {

inline std::filesystem::path table1_dir()
{
  return std::filesystem::path(GOALBENCH_SOURCE_DIR) / "data" / "table1";
}

// The six-unit example, typed in by hand rather than read from data/.
inline Dataset table1()
{
  Dataset d;
  d.indicators = {{"y1", "y1", ""}, {"y2", "y2", ""}};
  d.dmus = {
    {"A", "A", {1, 7}, {3, 7}, 25},
    {"B", "B", {6, 5}, {5, 4}, 30},
    {"C", "C", {9, 1}, {8, 4}, 20},
    {"D", "D", {3, 4}, {4, 7}, 20},
    {"E", "E", {5, 2}, {6, 3}, 25},
    {"F", "F", {2, 5}, {2, 6.6}, 20},
  };
  d.schedule.weights = {0.5, 0.5};
  d.grouping = grouping_from_group_ids(d.dmus);
  return d;
}

// Achievement written as max(0, min(1, 1 - s/d)) rather than by cases.
inline double reference_achievement(double s, double d)
{
  if(d == 0.0) return s <= 0.0 ? 1.0 : 0.0;
  return std::max(0.0, std::min(1.0, 1.0 - s / d));
}

// Vertices of the upper-right boundary of the free-disposal convex hull of 2-D
// points, left to right (increasing y1, decreasing y2). Indices into `pts`;
// among duplicates the first is kept.
inline std::vector<std::size_t> hull_frontier_2d(const std::vector<std::vector<double>> & pts)
{
  std::vector<std::size_t> order(pts.size());
  for(std::size_t i = 0; i < pts.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if(pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
    return pts[a][1] < pts[b][1];
  });
  // Walking right to left, keep only points strictly better in y2 than
  // everything to their right.
  std::vector<std::size_t> staircase;
  for(auto it = order.rbegin(); it != order.rend(); ++it)
  {
    if(staircase.empty() || pts[*it][1] > pts[staircase.back()][1])
      staircase.push_back(*it);
    else if(pts[*it] == pts[staircase.back()])
      staircase.back() = *it;
  }
  std::reverse(staircase.begin(), staircase.end());
  // Upper hull over the staircase (monotone chain, strict right turns only).
  std::vector<std::size_t> hull;
  for(std::size_t i : staircase)
  {
    while(hull.size() >= 2)
    {
      const auto & o = pts[hull[hull.size() - 2]];
      const auto & a = pts[hull.back()];
      const auto & b = pts[i];
      const double cross = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
      if(cross >= -1e-12) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  return hull;
}

// Largest t1 + t2 with point + t in the attainable set, by checking every
// candidate vertex of {z >= point} intersected with the hull.
inline double slack_2d(const std::vector<double> & point, const std::vector<std::vector<double>> & pts)
{
  const auto hull = hull_frontier_2d(pts);
  double best = -1.0;
  auto consider = [&](double z1, double z2) {
    if(z1 >= point[0] - 1e-12 && z2 >= point[1] - 1e-12) best = std::max(best, z1 - point[0] + z2 - point[1]);
  };
  for(std::size_t i : hull) consider(pts[i][0], pts[i][1]);
  // Free disposal extends the frontier straight down from the last vertex and
  // straight left from the first one.
  if(point[1] <= pts[hull.back()][1]) consider(pts[hull.back()][0], point[1]);
  if(point[0] <= pts[hull.front()][0]) consider(point[0], pts[hull.front()][1]);
  for(std::size_t e = 0; e + 1 < hull.size(); ++e)
  {
    const auto & a = pts[hull[e]];
    const auto & b = pts[hull[e + 1]];
    for(int r = 0; r < 2; ++r)
    {
      const double lo = std::min(a[r], b[r]);
      const double hi = std::max(a[r], b[r]);
      if(point[r] < lo || point[r] > hi || a[r] == b[r]) continue;
      const double t = (point[r] - a[r]) / (b[r] - a[r]);
      consider(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]));
    }
  }
  return best;
}

struct RandomInstanceSpec
{
  std::size_t indicators = 2;
  std::size_t dmus = 6;
  std::size_t group_size = 1;
};

// Integer-valued levels keep the instances well conditioned; goals are drawn
// around the actual levels so that every payment region occurs.
inline Dataset random_instance(std::mt19937_64 & rng, const RandomInstanceSpec & spec)
{
  std::uniform_int_distribution<int> level(1, 10);
  std::uniform_real_distribution<double> goal_shift(-0.6, 0.9);
  std::uniform_real_distribution<double> money(5.0, 50.0);
  std::uniform_real_distribution<double> share(0.2, 1.0);

  Dataset d;
  for(std::size_t r = 0; r < spec.indicators; ++r)
  {
    const std::string id = "y" + std::to_string(r + 1);
    d.indicators.push_back({id, id, ""});
  }
  std::vector<double> raw;
  double sum = 0.0;
  for(std::size_t r = 0; r < spec.indicators; ++r)
  {
    raw.push_back(share(rng));
    sum += raw.back();
  }
  for(double w : raw) d.schedule.weights.push_back(w / sum);
  // Make the weights sum to one exactly in floating point.
  double head = 0.0;
  for(std::size_t r = 0; r + 1 < spec.indicators; ++r) head += d.schedule.weights[r];
  d.schedule.weights.back() = 1.0 - head;

  for(std::size_t j = 0; j < spec.dmus; ++j)
  {
    DmuRecord dmu;
    dmu.id = "D" + std::to_string(j + 1);
    dmu.group_id = "G" + std::to_string(j / std::max<std::size_t>(spec.group_size, 1) + 1);
    for(std::size_t r = 0; r < spec.indicators; ++r)
    {
      const double y = level(rng);
      dmu.values.push_back(y);
      dmu.goals.push_back(std::max(0.0, std::round(4.0 * y * (1.0 + goal_shift(rng))) / 4.0));
    }
    dmu.endowment = std::round(100.0 * money(rng)) / 100.0;
    d.dmus.push_back(std::move(dmu));
  }
  d.grouping = grouping_from_group_ids(d.dmus);
  return d;
}

} // namespace goalbench::fixtures
