#include "uavcov/plan.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "uavcov/error.hpp"
#include "uavcov/io.hpp"

namespace uavcov {

using nlohmann::json;

const char* to_string(ActionType t) {
  switch (t) {
    case ActionType::Cover: return "cover";
    case ActionType::Travel: return "travel";
    case ActionType::Recharge: return "recharge";
    case ActionType::Unassigned: return "unassigned";
  }
  return "unassigned";
}

std::string describe(const Action& a) {
  switch (a.type) {
    case ActionType::Travel:
      return "travel " + std::to_string(a.zone) + "->" + std::to_string(a.to);
    case ActionType::Unassigned:
      return "unassigned";
    default:
      return std::string(to_string(a.type)) + " " + std::to_string(a.zone);
  }
}

Plan::Plan(int num_uavs, int num_steps)
    : num_uavs_(num_uavs),
      num_steps_(num_steps),
      cells_(static_cast<std::size_t>(num_uavs) * num_steps) {
  if (num_uavs < 0 || num_steps < 0) throw InputError("negative plan dimension");
}

namespace {
auto key(const AllocationEntry& e) { return std::tie(e.area, e.uav, e.step, e.zone); }
}  // namespace

void AllocationMatrix::normalize() {
  std::erase_if(entries, [](const AllocationEntry& e) { return !(e.phi > 0.0); });
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return key(a) < key(b); });
}

double AllocationMatrix::value(int area, int uav, int step, int zone) const {
  AllocationEntry probe{area, uav, step, zone, 0.0};
  auto it = std::lower_bound(entries.begin(), entries.end(), probe,
                             [](const auto& a, const auto& b) { return key(a) < key(b); });
  if (it != entries.end() && key(*it) == key(probe)) return it->phi;
  return 0.0;
}

std::string plan_to_json(const Plan& p) {
  json records = json::array();
  for (int d = 0; d < p.num_uavs(); ++d) {
    for (int k = 0; k < p.num_steps(); ++k) {
      const auto& a = p.at(d, k);
      json act{{"type", to_string(a.type)}};
      if (a.type == ActionType::Travel) {
        act["from"] = a.zone;
        act["to"] = a.to;
      } else if (a.type != ActionType::Unassigned) {
        act["zone"] = a.zone;
      }
      records.push_back({{"uav_id", d}, {"step", k}, {"action", std::move(act)}});
    }
  }
  json j{{"num_uavs", p.num_uavs()}, {"num_steps", p.num_steps()}, {"actions", std::move(records)}};
  return j.dump(1) + "\n";
}

Plan plan_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Plan p(j.at("num_uavs").get<int>(), j.at("num_steps").get<int>());
    for (const auto& r : j.at("actions")) {
      int d = r.at("uav_id").get<int>();
      int k = r.at("step").get<int>();
      if (d < 0 || d >= p.num_uavs() || k < 0 || k >= p.num_steps())
        throw InputError("plan record outside the declared dimensions");
      if (p.at(d, k).type != ActionType::Unassigned)
        throw InputError("duplicate plan record for uav " + std::to_string(d) + " step " +
                         std::to_string(k));
      const auto& act = r.at("action");
      const auto type = act.at("type").get<std::string>();
      if (type == "cover") {
        p.at(d, k) = Action::cover(act.at("zone").get<int>());
      } else if (type == "recharge") {
        p.at(d, k) = Action::recharge(act.at("zone").get<int>());
      } else if (type == "travel") {
        p.at(d, k) = Action::travel(act.at("from").get<int>(), act.at("to").get<int>());
      } else {
        throw InputError("unknown action type '" + type + "'");
      }
    }
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed plan document: ") + e.what());
  }
}

std::string allocation_to_csv(const AllocationMatrix& m) {
  std::string out = "area_id,uav_id,step,zone_id,phi\n";
  for (const auto& e : m.entries)
    out += std::to_string(e.area) + "," + std::to_string(e.uav) + "," + std::to_string(e.step) +
           "," + std::to_string(e.zone) + "," + io::format_double(e.phi) + "\n";
  return out;
}

AllocationMatrix allocation_from_csv(const std::string& text) {
  AllocationMatrix m;
  for (const auto& r : io::parse_csv(text, "area_id,uav_id,step,zone_id,phi")) {
    AllocationEntry e{static_cast<int>(io::parse_int(r[0])), static_cast<int>(io::parse_int(r[1])),
                      static_cast<int>(io::parse_int(r[2])), static_cast<int>(io::parse_int(r[3])),
                      io::parse_double(r[4])};
    if (!std::isfinite(e.phi) || e.phi < 0.0 || e.phi > 1.0)
      throw InputError("phi must lie in [0, 1]");
    m.entries.push_back(e);
  }
  m.normalize();
  for (std::size_t i = 1; i < m.entries.size(); ++i)
    if (key(m.entries[i]) == key(m.entries[i - 1]))
      throw InputError("duplicate allocation record");
  return m;
}

}  // namespace uavcov
