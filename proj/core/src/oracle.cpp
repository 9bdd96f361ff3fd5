#include "goalbench/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "goalbench/solver.hpp"

namespace goalbench::oracle {

namespace {

enum class Branch
{
  Full,
  Linear,
  Zero,
};

// Payment rate straight from the piecewise definition: 1 up to the goal,
// linear down to 0 at the ceiling, 0 beyond.
double rate(double deviation, double ceiling)
{
  if(deviation <= 0.0) return 1.0;
  if(deviation >= ceiling) return 0.0;
  return (ceiling - deviation) / ceiling;
}

struct Supporting
{
  bool found = false;
  std::vector<double> normal;
  double offset = 0.0;
};

Supporting supporting_plane(const std::vector<std::size_t> & subset,
                            const EfficientSet & efficient,
                            const PointSet & all_points,
                            SolverBackend & backend)
{
  const std::size_t s = efficient.matrix.front().size();
  LinearProgram lp;
  std::vector<int> u;
  for(std::size_t r = 0; r < s; ++r) u.push_back(lp.add_variable("u" + std::to_string(r), 1.0, kInf));
  const int u0 = lp.add_variable("u0", -kInf, kInf);
  for(std::size_t k : subset)
  {
    std::vector<Term> row;
    for(std::size_t r = 0; r < s; ++r) row.push_back({u[r], efficient.matrix[k][r]});
    row.push_back({u0, 1.0});
    lp.add_row("on", row, 0.0, 0.0);
  }
  for(const auto & y : all_points)
  {
    std::vector<Term> row;
    for(std::size_t r = 0; r < s; ++r) row.push_back({u[r], y[r]});
    row.push_back({u0, 1.0});
    lp.add_row("below", row, -kInf, 0.0);
  }
  const auto result = backend.solve(lp, {});
  Supporting out;
  if(!result.optimal()) return out;
  out.found = true;
  for(int col : u) out.normal.push_back(result.values[col]);
  out.offset = result.values[u0];
  return out;
}

std::vector<std::size_t> bits(unsigned mask, std::size_t count)
{
  std::vector<std::size_t> out;
  for(std::size_t i = 0; i < count; ++i)
  {
    if(mask & (1u << i)) out.push_back(i);
  }
  return out;
}

void check_facet_guard(const EfficientSet & efficient, const Dataset & dataset)
{
  if(efficient.empty()) throw std::invalid_argument("oracle: the efficient set is empty");
  if(efficient.size() > kMaxEfficient || dataset.indicator_count() > kMaxIndicators)
  {
    throw GuardError("oracle refuses instances with |E| > " + std::to_string(kMaxEfficient) + " or s > "
                     + std::to_string(kMaxIndicators) + " (got |E| = " + std::to_string(efficient.size())
                     + ", s = " + std::to_string(dataset.indicator_count()) + ")");
  }
}

struct MemberBest
{
  double value = kInf;
  std::vector<double> target;
};

} // namespace

bool within_guards(const Group & group, const Dataset & dataset, const EfficientSet & efficient)
{
  return !efficient.empty() && efficient.size() <= kMaxEfficient && dataset.indicator_count() <= kMaxIndicators
         && group.members.size() * dataset.indicator_count() <= kMaxGroupCells;
}

std::vector<FacetCandidate> enumerate_facets(const EfficientSet & efficient,
                                             const Dataset & dataset,
                                             const EngineSettings & settings)
{
  check_facet_guard(efficient, dataset);
  auto backend = make_backend(settings.solver);
  const auto all_points = points_of(dataset);
  const std::size_t m = efficient.size();

  // Grow feasible subsets one member at a time; a subset can only lie on a
  // supporting plane if all of its subsets do.
  std::map<unsigned, Supporting> feasible;
  std::vector<unsigned> layer;
  for(std::size_t k = 0; k < m; ++k)
  {
    auto plane = supporting_plane({k}, efficient, all_points, *backend);
    if(plane.found)
    {
      feasible[1u << k] = std::move(plane);
      layer.push_back(1u << k);
    }
  }
  while(!layer.empty())
  {
    std::vector<unsigned> next;
    for(unsigned mask : layer)
    {
      for(std::size_t k = 0; k < m; ++k)
      {
        const unsigned bit = 1u << k;
        // Extend only past the highest member so each subset is built once.
        if(bit < mask) continue;
        const unsigned grown = mask | bit;
        if(feasible.count(grown)) continue;
        bool subsets_ok = true;
        for(std::size_t i : bits(grown, m))
        {
          const unsigned without = grown & ~(1u << i);
          if(without && !feasible.count(without)) subsets_ok = false;
        }
        if(!subsets_ok) continue;
        auto plane = supporting_plane(bits(grown, m), efficient, all_points, *backend);
        if(plane.found)
        {
          feasible[grown] = std::move(plane);
          next.push_back(grown);
        }
      }
    }
    layer = std::move(next);
  }

  std::vector<FacetCandidate> facets;
  for(const auto & [mask, plane] : feasible)
  {
    const bool maximal = std::none_of(feasible.begin(), feasible.end(), [&, mask = mask](const auto & other) {
      return other.first != mask && (other.first & mask) == mask;
    });
    if(!maximal) continue;
    FacetCandidate facet;
    for(std::size_t k : bits(mask, m)) facet.spanning_ids.push_back(efficient.members[k]);
    std::sort(facet.spanning_ids.begin(), facet.spanning_ids.end());
    facet.normal = plane.normal;
    facet.offset = plane.offset;
    facets.push_back(std::move(facet));
  }
  std::sort(facets.begin(), facets.end(),
            [](const FacetCandidate & a, const FacetCandidate & b) { return a.spanning_ids < b.spanning_ids; });
  return facets;
}

OracleResult solve_group(const Group & group,
                         const Dataset & dataset,
                         const EfficientSet & efficient,
                         const EngineSettings & settings)
{
  check_facet_guard(efficient, dataset);
  const std::size_t s = dataset.indicator_count();
  if(group.members.empty()) throw std::invalid_argument("oracle: group '" + group.id + "' is empty");
  if(group.members.size() * s > kMaxGroupCells)
  {
    throw GuardError("oracle refuses groups with |J_g| * s > " + std::to_string(kMaxGroupCells) + " (group '"
                     + group.id + "' has " + std::to_string(group.members.size() * s) + ")");
  }

  const auto facets = enumerate_facets(efficient, dataset, settings);
  auto backend = make_backend(settings.solver);
  std::map<std::string, std::size_t> position;
  for(std::size_t k = 0; k < efficient.size(); ++k) position[efficient.members[k]] = k;

  std::size_t assignments = 1;
  for(std::size_t r = 0; r < s; ++r) assignments *= 3;

  OracleResult best;
  best.objective = kInf;
  for(const auto & facet : facets)
  {
    std::vector<const std::vector<double> *> spanning;
    for(const auto & id : facet.spanning_ids) spanning.push_back(&efficient.matrix[position.at(id)]);

    double total = 0.0;
    std::vector<std::vector<double>> targets;
    for(const auto & id : group.members)
    {
      const auto & dmu = dataset.dmu(id);
      std::vector<double> goal_rate(s);
      std::vector<double> ceiling(s);
      for(std::size_t r = 0; r < s; ++r)
      {
        ceiling[r] = dataset.schedule.ceiling(dmu, r);
        goal_rate[r] = rate(dmu.goals[r] - dmu.values[r], ceiling[r]);
      }

      MemberBest member;
      for(std::size_t code = 0; code < assignments; ++code)
      {
        std::vector<Branch> branch(s);
        std::size_t rest = code;
        bool usable = true;
        double constant = 0.0;
        for(std::size_t r = 0; r < s; ++r)
        {
          branch[r] = static_cast<Branch>(rest % 3);
          rest /= 3;
          if(branch[r] == Branch::Linear && ceiling[r] <= 0.0) usable = false;
          if(branch[r] == Branch::Full) constant += std::abs(1.0 - goal_rate[r]);
          if(branch[r] == Branch::Zero) constant += goal_rate[r];
        }
        if(!usable || constant >= member.value) continue;

        LinearProgram lp;
        std::vector<int> lambda;
        for(std::size_t k = 0; k < spanning.size(); ++k) lambda.push_back(lp.add_variable("l" + std::to_string(k)));
        std::vector<Term> convex;
        for(int col : lambda) convex.push_back({col, 1.0});
        lp.add_row("convex", convex, 1.0, 1.0);
        for(std::size_t r = 0; r < s; ++r)
        {
          std::vector<Term> level;
          for(std::size_t k = 0; k < spanning.size(); ++k) level.push_back({lambda[k], (*spanning[k])[r]});
          const double y = dmu.values[r];
          const double d = ceiling[r];
          switch(branch[r])
          {
            case Branch::Full: lp.add_row("full", level, -kInf, y); break;
            case Branch::Zero: lp.add_row("zero", level, y + d, kInf); break;
            case Branch::Linear:
            {
              lp.add_row("linear", level, y, y + d);
              // rate = 1 - (level - y)/d; e+ - e- = rate - goal_rate.
              const int up = lp.add_variable("eplus", 0.0, kInf, 1.0);
              const int down = lp.add_variable("eminus", 0.0, kInf, 1.0);
              std::vector<Term> gap;
              for(const auto & t : level) gap.push_back({t.col, -t.coef / d});
              gap.push_back({up, -1.0});
              gap.push_back({down, 1.0});
              const double rhs = goal_rate[r] - 1.0 - y / d;
              lp.add_row("gap", gap, rhs, rhs);
              break;
            }
          }
        }
        const auto result = backend->solve(lp, {settings.time_limit});
        if(!result.optimal()) continue;
        const double value = constant + result.objective;
        if(value < member.value)
        {
          member.value = value;
          member.target.assign(s, 0.0);
          for(std::size_t k = 0; k < spanning.size(); ++k)
          {
            for(std::size_t r = 0; r < s; ++r) member.target[r] += result.values[lambda[k]] * (*spanning[k])[r];
          }
        }
      }
      if(!std::isfinite(member.value))
      {
        total = kInf;
        break;
      }
      total += member.value;
      targets.push_back(std::move(member.target));
    }

    if(total < best.objective)
    {
      best.objective = total;
      best.targets = std::move(targets);
      best.facet = facet.spanning_ids;
    }
  }

  if(!std::isfinite(best.objective))
    throw std::runtime_error("oracle: no feasible facet/region combination for group '" + group.id + "'");
  best.members = group.members;
  return best;
}

} // namespace goalbench::oracle
