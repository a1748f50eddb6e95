#include "uavcov/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "uavcov/error.hpp"
#include "uavcov/io.hpp"
#include "uavcov/zone_graph.hpp"

namespace uavcov {

using nlohmann::json;

const char* to_string(Rule r) {
  switch (r) {
    case Rule::ActionExclusivity: return "action-exclusivity";
    case Rule::UnknownZone: return "unknown-zone";
    case Rule::CoverContinuity: return "cover-continuity";
    case Rule::RechargeContinuity: return "recharge-continuity";
    case Rule::TravelContinuity: return "travel-continuity";
    case Rule::LinkMembership: return "link-membership";
    case Rule::RechargeSiteMembership: return "recharge-site-membership";
    case Rule::BatteryWindow: return "battery-window";
  }
  return "unknown";
}

std::string describe(const Violation& v) {
  return "uav " + std::to_string(v.uav) + " step " + std::to_string(v.step) + ": " +
         to_string(v.rule) + ": " + v.message;
}

std::vector<Violation> check_feasibility(const Plan& p, const Scenario& s) {
  std::vector<Violation> out;
  const int D = static_cast<int>(s.uavs.size()), K = s.num_steps;
  const int Z = static_cast<int>(s.zones.size());
  if (p.num_uavs() != D || p.num_steps() != K)
    throw InputError("plan is " + std::to_string(p.num_uavs()) + "x" +
                     std::to_string(p.num_steps()) + ", scenario needs " + std::to_string(D) +
                     "x" + std::to_string(K));
  const ZoneGraph g(s);
  auto known = [&](int z) { return z >= 0 && z < Z; };

  for (int d = 0; d < D; ++d) {
    int pos = s.uavs[d].home_zone;
    int run = 0;
    bool reported = false;
    auto flag = [&](int k, Rule r, std::string msg) { out.push_back({d, k, r, std::move(msg)}); };
    if (!known(pos) || !s.is_recharge_site(pos))
      flag(0, Rule::RechargeSiteMembership, "home zone " + std::to_string(pos) +
                                                " is not a recharge site");
    for (int k = 0; k < K; ++k) {
      const Action& a = p.at(d, k);
      const std::string where = " (at zone " + std::to_string(pos) + ")";
      switch (a.type) {
        case ActionType::Unassigned:
          flag(k, Rule::ActionExclusivity, "no action assigned");
          break;
        case ActionType::Cover:
          if (!known(a.zone)) {
            flag(k, Rule::UnknownZone, "cover of unknown zone " + std::to_string(a.zone));
            break;
          }
          if (a.zone != pos)
            flag(k, Rule::CoverContinuity, "covers zone " + std::to_string(a.zone) + where);
          pos = a.zone;
          break;
        case ActionType::Recharge:
          if (!known(a.zone)) {
            flag(k, Rule::UnknownZone, "recharge at unknown zone " + std::to_string(a.zone));
            break;
          }
          if (!s.is_recharge_site(a.zone))
            flag(k, Rule::RechargeSiteMembership,
                 "zone " + std::to_string(a.zone) + " is not a recharge site");
          if (a.zone != pos)
            flag(k, Rule::RechargeContinuity, "recharges at zone " + std::to_string(a.zone) + where);
          pos = a.zone;
          break;
        case ActionType::Travel:
          if (!known(a.zone) || !known(a.to)) {
            flag(k, Rule::UnknownZone, "travel " + describe(a) + " names an unknown zone");
            break;
          }
          if (!g.link_index(a.zone, a.to))
            flag(k, Rule::LinkMembership, describe(a) + " is not a link");
          if (a.zone != pos)
            flag(k, Rule::TravelContinuity, "departs zone " + std::to_string(a.zone) + where);
          pos = a.to;
          break;
      }
      if (a.type == ActionType::Recharge) {
        run = 0;
        reported = false;
      } else if (++run > s.uavs[d].battery_steps && !reported) {
        flag(k, Rule::BatteryWindow,
             std::to_string(run) + " steps without recharge (battery " +
                 std::to_string(s.uavs[d].battery_steps) + ")");
        reported = true;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::pair{a.step, a.uav} < std::pair{b.step, b.uav};
  });
  return out;
}

double jain_index(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("Jain index of an empty list is undefined");
  double sum = 0.0, sq = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw DomainError("Jain index needs non-negative values");
    sum += v;
    sq += v * v;
  }
  if (!(sq > 0.0)) throw DomainError("Jain index is undefined when every value is zero");
  return sum * sum / (static_cast<double>(values.size()) * sq);
}

Metrics evaluate_plan(const Plan& p, const AllocationMatrix& phi, const Scenario& s,
                      const ThroughputMatrix& t, const VehicleCounts& n, int horizon) {
  return evaluate_plan(p, phi, s, t, n, Averaging{horizon, WindowRule::Truncated});
}

Metrics evaluate_plan(const Plan& p, const AllocationMatrix& phi, const Scenario& s,
                      const ThroughputMatrix& t, const VehicleCounts& n, const Averaging& avg) {
  const int D = static_cast<int>(s.uavs.size()), K = s.num_steps;
  const int Z = static_cast<int>(s.zones.size()), A = static_cast<int>(s.areas.size());
  if (avg.horizon < 1) throw ConfigError("horizon", "must be >= 1");
  if (p.num_uavs() != D || p.num_steps() != K) throw InputError("plan does not match the scenario");
  if (t.num_areas() != A || t.num_zones() != Z)
    throw InputError("throughput matrix does not match the scenario");
  if (n.num_areas() != A || n.num_steps() != K)
    throw InputError("vehicle counts do not match the scenario");

  constexpr double kSlack = 1e-9;
  std::map<std::pair<int, int>, double> per_uav, per_zone;
  for (const auto& e : phi.entries) {
    if (e.area < 0 || e.area >= A || e.uav < 0 || e.uav >= D || e.step < 0 || e.step >= K ||
        e.zone < 0 || e.zone >= Z)
      throw InputError("allocation entry outside the scenario dimensions");
    if (!(e.phi >= 0.0 && e.phi <= 1.0 + kSlack)) throw InputError("phi must lie in [0, 1]");
    const auto& a = p.at(e.uav, e.step);
    if (e.phi > 0.0 && !(a.type == ActionType::Cover && a.zone == e.zone))
      throw InputError("allocation gives spectrum to uav " + std::to_string(e.uav) + " at step " +
                       std::to_string(e.step) + " in zone " + std::to_string(e.zone) +
                       ", which it does not cover");
    per_uav[{e.uav, e.step}] += e.phi;
    per_zone[{e.zone, e.step}] += e.phi;
  }
  for (const auto& [key, v] : per_uav)
    if (v > 1.0 + kSlack)
      throw InputError("uav " + std::to_string(key.first) + " hands out more than its spectrum at step " +
                       std::to_string(key.second));
  for (const auto& [key, v] : per_zone)
    if (v > 1.0 + kSlack)
      throw InputError("zone " + std::to_string(key.first) + " spectrum oversubscribed at step " +
                       std::to_string(key.second));

  Metrics m;
  m.num_areas = A;
  m.num_steps = K;
  m.mu.assign(static_cast<std::size_t>(A) * K, 0.0);
  m.mubar.assign(m.mu.size(), 0.0);
  m.included.assign(m.mu.size(), false);
  std::vector<double> delivered(m.mu.size(), 0.0);  // sum T phi, bit/s
  for (const auto& e : phi.entries) delivered[e.area * K + e.step] += t.at(e.area, e.zone) * e.phi;
  for (int a = 0; a < A; ++a)
    for (int k = 0; k < K; ++k)
      if (n.at(a, k) > 0) {
        m.included[a * K + k] = true;
        m.mu[a * K + k] = delivered[a * K + k] / static_cast<double>(n.at(a, k));
      }

  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < A; ++a)
    for (int k = 0; k < K; ++k) {
      if (!m.included[a * K + k]) continue;
      double sum = 0.0;
      for (int h = window_begin(k, avg); h <= k; ++h) sum += m.mu[a * K + h];
      m.mubar[a * K + k] = sum / window_divisor(k, avg);
      best = std::min(best, m.mubar[a * K + k]);
    }
  if (!std::isfinite(best)) throw ModelError("objective undefined: N(a,k) is zero everywhere");
  m.objective = best;

  m.step_total_bps.assign(K, 0.0);
  m.area_total_bits.assign(A, 0.0);
  std::vector<double> occupied_totals;
  for (int a = 0; a < A; ++a) {
    bool hosted = false;
    for (int k = 0; k < K; ++k) {
      if (!m.included[a * K + k]) continue;
      hosted = true;
      const double rate = static_cast<double>(n.at(a, k)) * m.mu[a * K + k];
      m.step_total_bps[k] += rate;
      m.area_total_bits[a] += rate * s.step_duration_s;
    }
    if (hosted) occupied_totals.push_back(m.area_total_bits[a]);
    m.total_bits += m.area_total_bits[a];
  }
  if (std::any_of(occupied_totals.begin(), occupied_totals.end(), [](double v) { return v > 0.0; }))
    m.jain = jain_index(occupied_totals);

  int counts[3] = {0, 0, 0}, assigned = 0;
  double replenished = 0.0;
  int recharges = 0;
  for (int d = 0; d < D; ++d) {
    int run = 0, start = 0;
    for (int k = 0; k < K; ++k) {
      const auto type = p.at(d, k).type;
      if (type == ActionType::Unassigned) continue;
      ++assigned;
      ++counts[static_cast<int>(type)];
      if (type == ActionType::Recharge) {
        if (run > 0) m.missions.push_back({d, start, run});
        replenished += run;
        ++recharges;
        run = 0;
      } else {
        if (run == 0) start = k;
        ++run;
      }
    }
    if (run > 0) m.missions.push_back({d, start, run});
  }
  if (assigned > 0) {
    m.actions.cover = static_cast<double>(counts[0]) / assigned;
    m.actions.travel = static_cast<double>(counts[1]) / assigned;
    m.actions.recharge = static_cast<double>(counts[2]) / assigned;
  }
  if (recharges > 0) m.mean_replenished = replenished / recharges;
  return m;
}

std::string steps_csv(const Metrics& m) {
  std::string out = "step,total_bps,min_mubar_bps\n";
  for (int k = 0; k < m.num_steps; ++k) {
    double low = std::numeric_limits<double>::infinity();
    for (int a = 0; a < m.num_areas; ++a)
      if (m.included[a * m.num_steps + k]) low = std::min(low, m.mubar[a * m.num_steps + k]);
    out += std::to_string(k) + "," + io::format_double(m.step_total_bps[k]) + "," +
           (std::isfinite(low) ? io::format_double(low) : std::string("nan")) + "\n";
  }
  return out;
}

std::string areas_csv(const Metrics& m) {
  std::string out = "area_id,total_bits\n";
  for (int a = 0; a < m.num_areas; ++a)
    out += std::to_string(a) + "," + io::format_double(m.area_total_bits[a]) + "\n";
  return out;
}

Summary summarize(const Metrics& m) {
  Summary s;
  s.objective = m.objective;
  s.jain = m.jain;
  s.total_bits = m.total_bits;
  s.actions = m.actions;
  s.missions = static_cast<int>(m.missions.size());
  int total = 0;
  for (const auto& mi : m.missions) {
    total += mi.length;
    s.max_mission_steps = std::max(s.max_mission_steps, mi.length);
  }
  if (s.missions > 0) s.mean_mission_steps = static_cast<double>(total) / s.missions;
  s.mean_replenished = m.mean_replenished;
  return s;
}

std::string summary_json(const Metrics& m) {
  const Summary s = summarize(m);
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j{{"objective_bps", s.objective},
         {"jain", opt(s.jain)},
         {"total_bits", s.total_bits},
         {"actions", {{"cover", s.actions.cover}, {"travel", s.actions.travel},
                      {"recharge", s.actions.recharge}}},
         {"missions", {{"count", s.missions}, {"mean_steps", s.mean_mission_steps},
                       {"max_steps", s.max_mission_steps}}},
         {"mean_battery_replenished", opt(s.mean_replenished)}};
  return j.dump(1) + "\n";
}

Summary summary_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Summary s;
    auto opt = [](const json& v) {
      return v.is_null() ? std::optional<double>() : std::optional<double>(v.get<double>());
    };
    s.objective = j.at("objective_bps").get<double>();
    s.jain = opt(j.at("jain"));
    s.total_bits = j.at("total_bits").get<double>();
    const auto& a = j.at("actions");
    s.actions = {a.at("cover").get<double>(), a.at("travel").get<double>(),
                 a.at("recharge").get<double>()};
    const auto& mi = j.at("missions");
    s.missions = mi.at("count").get<int>();
    s.mean_mission_steps = mi.at("mean_steps").get<double>();
    s.max_mission_steps = mi.at("max_steps").get<int>();
    s.mean_replenished = opt(j.at("mean_battery_replenished"));
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed metrics summary: ") + e.what());
  }
}

}  // namespace uavcov
