#include "throughput_terms.hpp"

#include <algorithm>

#include "uavcov/error.hpp"

namespace uavcov::detail {

ThroughputTerms add_throughput_objective(lp::LinearProgram& lp, const std::vector<PhiColumn>& phis,
                                         const std::vector<double>& scaled_t,
                                         const std::vector<std::int64_t>& n, int num_areas,
                                         int num_steps, int num_zones,
                                         const PlanningOptions& options) {
  const auto& avg = options.averaging;
  if (avg.horizon < 1) throw ConfigError("horizon", "must be >= 1");
  ThroughputTerms terms;
  terms.mu_col.assign(static_cast<std::size_t>(num_areas) * num_steps, -1);
  for (int a = 0; a < num_areas; ++a)
    for (int k = 0; k < num_steps; ++k)
      if (n[a * num_steps + k] > 0) terms.mu_col[a * num_steps + k] = lp.add_column(0.0, lp::kInf);
  if (std::none_of(terms.mu_col.begin(), terms.mu_col.end(), [](int c) { return c >= 0; }))
    throw ModelError("objective undefined: N(a,k) is zero for every area and step");
  terms.t_col = lp.add_column(0.0, lp::kInf, 1.0);

  std::vector<std::vector<const PhiColumn*>> by_pair(terms.mu_col.size());
  for (const auto& p : phis) by_pair[p.area * num_steps + p.step].push_back(&p);

  std::vector<int> cols;
  std::vector<double> vals;
  // mu(a,k) = sum_z T(a,z) sum_d phi(a,d,k,z) / N(a,k)
  for (int a = 0; a < num_areas; ++a) {
    for (int k = 0; k < num_steps; ++k) {
      const int mu = terms.mu_col[a * num_steps + k];
      if (mu < 0) continue;
      cols.assign({mu});
      vals.assign({1.0});
      const double users = static_cast<double>(n[a * num_steps + k]);
      for (const auto* p : by_pair[a * num_steps + k]) {
        cols.push_back(p->col);
        vals.push_back(-scaled_t[a * num_zones + p->zone] / users);
      }
      lp.add_row(0.0, 0.0, cols, vals);
      ++terms.throughput_rows;
    }
  }
  // t <= mubar(a,k) for every included (a,k)
  const bool tiebreak = options.tiebreak == TieBreak::SumRollingThroughput;
  if (tiebreak) terms.tiebreak.assign(lp.num_columns(), 0.0);
  for (int a = 0; a < num_areas; ++a) {
    for (int k = 0; k < num_steps; ++k) {
      if (terms.mu_col[a * num_steps + k] < 0) continue;
      const double w = 1.0 / window_divisor(k, avg);
      cols.assign({terms.t_col});
      vals.assign({1.0});
      for (int h = window_begin(k, avg); h <= k; ++h) {
        const int mu = terms.mu_col[a * num_steps + h];
        if (mu < 0) continue;
        cols.push_back(mu);
        vals.push_back(-w);
        if (tiebreak) terms.tiebreak[mu] += w;
      }
      lp.add_row(-lp::kInf, 0.0, cols, vals);
      ++terms.objective_rows;
    }
  }
  return terms;
}

double throughput_scale(const ThroughputMatrix& t) {
  double top = 0.0;
  for (int a = 0; a < t.num_areas(); ++a)
    for (int z = 0; z < t.num_zones(); ++z) top = std::max(top, t.at(a, z));
  return top > 0.0 ? top : 1.0;
}

std::vector<double> flatten(const ThroughputMatrix& t, const Scenario& s) {
  const int na = static_cast<int>(s.areas.size()), nz = static_cast<int>(s.zones.size());
  if (t.num_areas() != na || t.num_zones() != nz)
    throw InputError("throughput matrix is " + std::to_string(t.num_areas()) + "x" +
                     std::to_string(t.num_zones()) + ", scenario needs " + std::to_string(na) +
                     "x" + std::to_string(nz));
  std::vector<double> out(static_cast<std::size_t>(na) * nz);
  for (int a = 0; a < na; ++a)
    for (int z = 0; z < nz; ++z) out[a * nz + z] = t.at(a, z);
  return out;
}

std::vector<std::int64_t> flatten(const VehicleCounts& n, const Scenario& s) {
  const int na = static_cast<int>(s.areas.size());
  if (n.num_areas() != na || n.num_steps() != s.num_steps)
    throw InputError("vehicle counts are " + std::to_string(n.num_areas()) + "x" +
                     std::to_string(n.num_steps()) + ", scenario needs " + std::to_string(na) +
                     "x" + std::to_string(s.num_steps));
  std::vector<std::int64_t> out(static_cast<std::size_t>(na) * s.num_steps);
  for (int a = 0; a < na; ++a)
    for (int k = 0; k < s.num_steps; ++k) out[a * s.num_steps + k] = n.at(a, k);
  return out;
}

}  // namespace uavcov::detail
