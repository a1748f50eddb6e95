#include <algorithm>
#include <sstream>

#include "throughput_terms.hpp"
#include "uavcov/error.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {

int ModelStats::total_vars() const {
  return cover_vars + travel_vars + recharge_vars + spectrum_vars + throughput_vars + 1;
}

int ModelStats::total_rows() const {
  return one_action_rows + cover_continuity_rows + recharge_continuity_rows +
         travel_continuity_rows + battery_rows + uav_spectrum_rows + zone_spectrum_rows +
         throughput_rows + objective_rows;
}

std::string format_stats(const ModelStats& s) {
  std::ostringstream out;
  out << "variables " << s.total_vars() << ": cover " << s.cover_vars << ", travel "
      << s.travel_vars << ", recharge " << s.recharge_vars << ", spectrum " << s.spectrum_vars
      << ", throughput " << s.throughput_vars << ", epigraph 1\n"
      << "constraints " << s.total_rows() << ": one-action " << s.one_action_rows
      << ", cover-continuity " << s.cover_continuity_rows << ", recharge-continuity "
      << s.recharge_continuity_rows << ", travel-continuity " << s.travel_continuity_rows
      << ", battery " << s.battery_rows << ", uav-spectrum " << s.uav_spectrum_rows
      << ", zone-spectrum " << s.zone_spectrum_rows << ", throughput " << s.throughput_rows
      << ", objective " << s.objective_rows << "\n"
      << "nonzeros " << s.nonzeros << "\n";
  return out.str();
}

PlanningModel build_model(const Scenario& s, const ThroughputMatrix& t, const VehicleCounts& n,
                          int horizon) {
  PlanningOptions options;
  options.averaging.horizon = horizon;
  return build_model(s, t, n, options);
}

PlanningModel build_model(const Scenario& s, const ThroughputMatrix& t, const VehicleCounts& n,
                          const PlanningOptions& options) {
  PlanningModel m;
  m.options_ = options;
  m.num_uavs_ = static_cast<int>(s.uavs.size());
  m.num_steps_ = s.num_steps;
  m.num_zones_ = static_cast<int>(s.zones.size());
  m.num_areas_ = static_cast<int>(s.areas.size());
  m.links_ = s.links;
  m.sites_ = s.recharge_sites;
  m.t_ = detail::flatten(t, s);
  m.n_ = detail::flatten(n, s);
  m.scale_ = detail::throughput_scale(t);
  const ZoneGraph graph(s);

  const int D = m.num_uavs_, K = m.num_steps_, Z = m.num_zones_, L = m.num_links(),
            R = m.num_sites(), A = m.num_areas_;
  std::vector<int> site_index(Z, -1);
  for (int r = 0; r < R; ++r) site_index[m.sites_[r]] = r;
  for (const auto& u : s.uavs)
    if (u.home_zone < 0 || u.home_zone >= Z) throw InputError("uav home zone is not a zone");

  m.served_.assign(Z, {});
  m.pair_offset_.assign(Z, 0);
  for (int z = 0; z < Z; ++z) {
    m.pair_offset_[z] = m.pairs_per_step_;
    for (int a = 0; a < A; ++a)
      if (m.t_[a * Z + z] > 0.0) m.served_[z].push_back(a);
    m.pairs_per_step_ += static_cast<int>(m.served_[z].size());
  }

  auto& lp = m.lp_;
  auto& st = m.stats_;
  m.gamma_offset_ = lp.num_columns();
  for (int i = 0; i < D * K * Z; ++i) lp.add_column(0.0, 1.0);
  m.tau_offset_ = lp.num_columns();
  for (int i = 0; i < D * K * L; ++i) lp.add_column(0.0, 1.0);
  m.rho_offset_ = lp.num_columns();
  for (int i = 0; i < D * K * R; ++i) lp.add_column(0.0, 1.0);
  m.phi_offset_ = lp.num_columns();
  std::vector<detail::PhiColumn> phis;
  for (int d = 0; d < D; ++d)
    for (int k = 0; k < K; ++k)
      for (int z = 0; z < Z; ++z)
        for (int a : m.served_[z]) phis.push_back({lp.add_column(0.0, 1.0), a, d, k, z});
  st.cover_vars = D * K * Z;
  st.travel_vars = D * K * L;
  st.recharge_vars = D * K * R;
  st.spectrum_vars = static_cast<int>(phis.size());

  std::vector<int> cols;
  std::vector<double> vals;
  auto push = [&](int c, double v) {
    cols.push_back(c);
    vals.push_back(v);
  };
  auto row = [&](double lo, double hi) {
    lp.add_row(lo, hi, cols, vals);
    cols.clear();
    vals.clear();
  };

  // Exactly one action per UAV and step.
  for (int d = 0; d < D; ++d) {
    for (int k = 0; k < K; ++k) {
      for (int z = 0; z < Z; ++z) push(m.gamma(d, k, z), 1.0);
      for (int l = 0; l < L; ++l) push(m.tau(d, k, l), 1.0);
      for (int r = 0; r < R; ++r) push(m.rho(d, k, r), 1.0);
      row(1.0, 1.0);
      ++st.one_action_rows;
    }
  }

  // "Present at z after step k-1": gamma + rho at z plus travel into z. At
  // k = 0 every UAV sits at its home site after a virtual recharge.
  auto add_presence = [&](int d, int k, int z) {
    if (k == 0) return s.uavs[d].home_zone == z ? 1.0 : 0.0;
    push(m.gamma(d, k - 1, z), -1.0);
    if (site_index[z] >= 0) push(m.rho(d, k - 1, site_index[z]), -1.0);
    for (int li : graph.incoming(z)) push(m.tau(d, k - 1, li), -1.0);
    return 0.0;
  };
  for (int d = 0; d < D; ++d) {
    for (int k = 0; k < K; ++k) {
      for (int z = 0; z < Z; ++z) {
        push(m.gamma(d, k, z), 1.0);
        row(-lp::kInf, add_presence(d, k, z));
        ++st.cover_continuity_rows;
      }
      for (int r = 0; r < R; ++r) {
        push(m.rho(d, k, r), 1.0);
        row(-lp::kInf, add_presence(d, k, m.sites_[r]));
        ++st.recharge_continuity_rows;
      }
      for (int l = 0; l < L; ++l) {
        push(m.tau(d, k, l), 1.0);
        row(-lp::kInf, add_presence(d, k, m.links_[l].from));
        ++st.travel_continuity_rows;
      }
    }
  }

  // At least one recharge in every window of B(d) + 1 consecutive steps.
  for (int d = 0; d < D; ++d) {
    const int b = s.uavs[d].battery_steps;
    for (int k = b; k < K; ++k) {
      for (int h = k - b; h <= k; ++h)
        for (int r = 0; r < R; ++r) push(m.rho(d, h, r), 1.0);
      row(1.0, lp::kInf);
      ++st.battery_rows;
    }
  }

  // Spectrum: a UAV hands out at most what it has while covering, and UAVs
  // sharing a zone split one spectrum.
  for (int d = 0; d < D; ++d) {
    for (int k = 0; k < K; ++k) {
      for (int z = 0; z < Z; ++z) {
        if (m.served_[z].empty()) continue;
        for (int j = 0; j < static_cast<int>(m.served_[z].size()); ++j) push(m.phi(d, k, z, j), 1.0);
        push(m.gamma(d, k, z), -1.0);
        row(-lp::kInf, 0.0);
        ++st.uav_spectrum_rows;
      }
    }
  }
  for (int k = 0; k < K; ++k) {
    for (int z = 0; z < Z; ++z) {
      if (m.served_[z].empty()) continue;
      for (int d = 0; d < D; ++d)
        for (int j = 0; j < static_cast<int>(m.served_[z].size()); ++j) push(m.phi(d, k, z, j), 1.0);
      row(-lp::kInf, 1.0);
      ++st.zone_spectrum_rows;
    }
  }

  std::vector<double> scaled(m.t_.size());
  std::transform(m.t_.begin(), m.t_.end(), scaled.begin(), [&](double v) { return v / m.scale_; });
  auto terms = detail::add_throughput_objective(lp, phis, scaled, m.n_, A, K, Z, options);
  m.mu_col_ = std::move(terms.mu_col);
  m.t_col_ = terms.t_col;
  m.tiebreak_cost_ = std::move(terms.tiebreak);
  st.throughput_vars = terms.throughput_rows;
  st.throughput_rows = terms.throughput_rows;
  st.objective_rows = terms.objective_rows;
  st.nonzeros = lp.num_nonzeros();
  return m;
}

double FractionalSolution::cover_value(int uav, int step, int zone) const {
  return gamma[(static_cast<std::size_t>(uav) * num_steps + step) * num_zones + zone];
}

double FractionalSolution::travel_value(int uav, int step, int link) const {
  return tau[(static_cast<std::size_t>(uav) * num_steps + step) * links.size() + link];
}

double FractionalSolution::recharge_value(int uav, int step, int zone) const {
  auto it = std::lower_bound(recharge_sites.begin(), recharge_sites.end(), zone);
  if (it == recharge_sites.end() || *it != zone) return 0.0;
  auto r = static_cast<std::size_t>(it - recharge_sites.begin());
  return rho[(static_cast<std::size_t>(uav) * num_steps + step) * recharge_sites.size() + r];
}

namespace {

// The LP is feasible whenever every UAV can stay parked recharging at home;
// name the family that breaks that witness.
std::string diagnose_infeasibility(const PlanningModel& m, const std::vector<int>& homes) {
  for (std::size_t d = 0; d < homes.size(); ++d) {
    const auto& sites = m.recharge_sites();
    if (!std::binary_search(sites.begin(), sites.end(), homes[d]))
      return "recharge continuity / battery window: uav " + std::to_string(d) +
             " does not start at a recharge site";
  }
  return "unknown family (the all-recharge witness satisfies every constraint)";
}

}  // namespace

FractionalSolution solve_relaxation(const PlanningModel& m) {
  lp::Options opts;
  if (m.options().tiebreak != TieBreak::None) opts.tiebreak_cost = m.tiebreak_cost();
  auto res = lp::solve(m.program(), opts);
  if (res.status == lp::Status::Infeasible)
    throw SolverError("relaxation infeasible: " + res.detail);
  if (res.status != lp::Status::Optimal) throw SolverError("relaxation not solved: " + res.detail);

  FractionalSolution f;
  f.num_uavs = m.num_uavs();
  f.num_steps = m.num_steps();
  f.num_zones = m.num_zones();
  f.num_areas = m.num_areas();
  f.links = m.links();
  f.recharge_sites = m.recharge_sites();
  const int D = f.num_uavs, K = f.num_steps, Z = f.num_zones, A = f.num_areas;
  auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  for (int d = 0; d < D; ++d)
    for (int k = 0; k < K; ++k) {
      for (int z = 0; z < Z; ++z) f.gamma.push_back(clamp01(res.x[m.gamma(d, k, z)]));
      for (int l = 0; l < m.num_links(); ++l) f.tau.push_back(clamp01(res.x[m.tau(d, k, l)]));
      for (int r = 0; r < m.num_sites(); ++r) f.rho.push_back(clamp01(res.x[m.rho(d, k, r)]));
      for (int z = 0; z < Z; ++z)
        for (int j = 0; j < static_cast<int>(m.served_areas(z).size()); ++j) {
          double v = clamp01(res.x[m.phi(d, k, z, j)]);
          if (v > 0.0) f.phi.entries.push_back({m.served_areas(z)[j], d, k, z, v});
        }
    }
  f.phi.normalize();
  f.objective = res.objective * m.throughput_scale();
  f.mu.assign(static_cast<std::size_t>(A) * K, 0.0);
  f.mubar.assign(f.mu.size(), 0.0);
  f.included.assign(f.mu.size(), false);
  for (int a = 0; a < A; ++a)
    for (int k = 0; k < K; ++k)
      if (int c = m.mu(a, k); c >= 0) {
        f.mu[a * K + k] = std::max(0.0, res.x[c]) * m.throughput_scale();
        f.included[a * K + k] = true;
      }
  const auto& avg = m.options().averaging;
  for (int a = 0; a < A; ++a)
    for (int k = 0; k < K; ++k) {
      if (!f.included[a * K + k]) continue;
      double sum = 0.0;
      for (int h = window_begin(k, avg); h <= k; ++h) sum += f.mu[a * K + h];
      f.mubar[a * K + k] = sum / window_divisor(k, avg);
    }
  return f;
}

RelaxationRun plan_with_relaxation(const Scenario& s, const ThroughputMatrix& t,
                                   const VehicleCounts& n, const PlanningOptions& options) {
  RelaxationRun run;
  const auto model = build_model(s, t, n, options);
  run.stats = model.stats();
  FractionalSolution f;
  try {
    f = solve_relaxation(model);
  } catch (const SolverError& e) {
    std::vector<int> homes;
    for (const auto& u : s.uavs) homes.push_back(u.home_zone);
    throw SolverError(std::string(e.what()) + "; " + diagnose_infeasibility(model, homes));
  }
  run.relaxation_objective = f.objective;
  run.plan = round_solution(f, s);
  run.allocation = allocate_spectrum(run.plan, s, t, n, options);
  return run;
}

}  // namespace uavcov
