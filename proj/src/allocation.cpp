#include <algorithm>
#include <limits>
#include <map>

#include "throughput_terms.hpp"
#include "uavcov/error.hpp"
#include "uavcov/optimizer.hpp"

namespace uavcov {

namespace {

// Solver output can sit a hair outside [0, 1] or overfill a spectrum budget;
// clamp and scale each over-full group back onto its limit.
void clean(std::vector<detail::PhiColumn>& phis, std::vector<double>& x) {
  for (auto& v : x) v = std::clamp(v, 0.0, 1.0);
  auto shrink = [&](auto group_key) {
    std::map<decltype(group_key(phis.front())), double> sum;
    for (std::size_t i = 0; i < phis.size(); ++i) sum[group_key(phis[i])] += x[phis[i].col];
    for (std::size_t i = 0; i < phis.size(); ++i)
      if (double total = sum[group_key(phis[i])]; total > 1.0) x[phis[i].col] /= total;
  };
  if (phis.empty()) return;
  shrink([](const detail::PhiColumn& p) { return std::pair{p.uav, p.step}; });
  shrink([](const detail::PhiColumn& p) { return std::pair{p.zone, p.step}; });
}

}  // namespace

SpectrumAllocation allocate_spectrum(const Plan& p, const Scenario& s, const ThroughputMatrix& t,
                                     const VehicleCounts& n, const PlanningOptions& options) {
  const int D = static_cast<int>(s.uavs.size()), K = s.num_steps;
  const int Z = static_cast<int>(s.zones.size()), A = static_cast<int>(s.areas.size());
  if (p.num_uavs() != D || p.num_steps() != K) throw InputError("plan does not match the scenario");
  const auto tf = detail::flatten(t, s);
  const auto nf = detail::flatten(n, s);
  const double scale = detail::throughput_scale(t);

  lp::LinearProgram lp;
  std::vector<detail::PhiColumn> phis;
  std::vector<int> cols;
  std::vector<double> vals;
  std::map<std::pair<int, int>, std::vector<int>> zone_rows;  // (step, zone) -> phi cols
  for (int d = 0; d < D; ++d) {
    for (int k = 0; k < K; ++k) {
      const auto& act = p.at(d, k);
      if (act.type != ActionType::Cover) continue;
      if (act.zone < 0 || act.zone >= Z) throw InputError("plan covers an unknown zone");
      cols.clear();
      for (int a = 0; a < A; ++a) {
        if (!(tf[a * Z + act.zone] > 0.0)) continue;
        const int c = lp.add_column(0.0, 1.0);
        phis.push_back({c, a, d, k, act.zone});
        cols.push_back(c);
        zone_rows[{k, act.zone}].push_back(c);
      }
      if (cols.empty()) continue;
      vals.assign(cols.size(), 1.0);
      lp.add_row(-lp::kInf, 1.0, cols, vals);
    }
  }
  for (const auto& [key, group] : zone_rows) {
    vals.assign(group.size(), 1.0);
    lp.add_row(-lp::kInf, 1.0, group, vals);
  }

  std::vector<double> scaled(tf.size());
  std::transform(tf.begin(), tf.end(), scaled.begin(), [&](double v) { return v / scale; });
  PlanningOptions local = options;
  local.tiebreak = options.allocation_tiebreak;
  const auto terms = detail::add_throughput_objective(lp, phis, scaled, nf, A, K, Z, local);

  lp::Options opts;
  if (local.tiebreak != TieBreak::None) opts.tiebreak_cost = terms.tiebreak;
  auto res = lp::solve(lp, opts);
  if (res.status != lp::Status::Optimal)
    throw SolverError("spectrum allocation not solved: " + res.detail);
  clean(phis, res.x);

  SpectrumAllocation out;
  for (const auto& ph : phis)
    if (res.x[ph.col] > 0.0)
      out.allocation.entries.push_back({ph.area, ph.uav, ph.step, ph.zone, res.x[ph.col]});
  out.allocation.normalize();

  // Objective recomputed from the cleaned allocation in bit/s.
  std::vector<double> mu(static_cast<std::size_t>(A) * K, 0.0);
  for (const auto& e : out.allocation.entries)
    mu[e.area * K + e.step] += tf[e.area * Z + e.zone] * e.phi;
  for (int a = 0; a < A; ++a)
    for (int k = 0; k < K; ++k)
      if (nf[a * K + k] > 0) mu[a * K + k] /= static_cast<double>(nf[a * K + k]);
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < A; ++a)
    for (int k = 0; k < K; ++k) {
      if (nf[a * K + k] <= 0) continue;
      double sum = 0.0;
      for (int h = window_begin(k, options.averaging); h <= k; ++h)
        if (nf[a * K + h] > 0) sum += mu[a * K + h];
      best = std::min(best, sum / window_divisor(k, options.averaging));
    }
  out.objective = best;
  return out;
}

}  // namespace uavcov
