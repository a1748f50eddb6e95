// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "uavcov/baseline.hpp"
#include "uavcov/error.hpp"
#include "uavcov/evaluator.hpp"
#include "uavcov/linkbudget.hpp"
#include "uavcov/mobility.hpp"
#include "uavcov/optimizer.hpp"

using namespace uavcov;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Evaluator/optimizer agreement, collected over every rounded plan.
struct Agreement {
  int plans = 0;
  double worst = 0.0;
  std::string first_bad;
  void add(const std::string& what, double eval, double alloc) {
    ++plans;
    const double rel = std::abs(eval - alloc) / std::max(1.0, std::abs(alloc));
    worst = std::max(worst, rel);
    if (rel > 1e-6 && first_bad.empty())
      first_bad = what + " eval " + fmt("%.9g", eval) + " vs alloc " + fmt("%.9g", alloc);
  }
} agreement;

// Mobility invariants, collected over every simulated run.
struct MobilityCheck {
  int runs = 0;
  std::string first_bad;
  void add(const Scenario& s, const MobilityConfig& cfg, const EvacuationResult& r, std::uint64_t seed) {
    ++runs;
    if (!first_bad.empty()) return;
    auto bad = [&](const std::string& m) { first_bad = "seed " + std::to_string(seed) + ": " + m; };
    for (const auto& t : r.trace.tallies)
      if (t.in_network + t.arrived != cfg.total_vehicles) return bad("conservation broken");
    std::map<int, std::int64_t> last_seq;
    for (const auto& t : r.trace.traversals) {
      if (t.exit_tick - t.entry_tick < s.areas[t.area].free_flow_ticks)
        return bad("traversal faster than free flow on area " + std::to_string(t.area));
      auto [it, fresh] = last_seq.try_emplace(t.area, t.entry_seq);
      if (!fresh) {
        if (t.entry_seq <= it->second) return bad("FIFO broken on area " + std::to_string(t.area));
        it->second = t.entry_seq;
      }
    }
  }
} mobility;

void criterion_linkbudget() {
  // Independent closed form of the path-loss model.
  const double want_pl = 40 * std::log10(500.0) + 7.8 - 18 * std::log10(50.0) - 18 * std::log10(1.5) +
                         2 * std::log10(1.8);
  const double pl = path_loss_db(500, 50, 1.5, 1.8);
  const double snr = snr_db(30.0, pl, -121.45);
  const bool ok = std::abs(pl - 82.5184) <= 1e-4 && std::abs(snr - 68.9316) <= 1e-4 &&
                  std::abs(pl - want_pl) <= 1e-9;
  report(1, ok, "path loss " + fmt("%.6f", pl) + " dB, SNR " + fmt("%.6f", snr) + " dB");
}

void criterion_sandwich() {
  PlanningOptions opt;
  opt.averaging.horizon = 2;
  bool ok = true;
  double worst_s = 0.0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t0 = Clock::now();
    const auto in = testing::tiny_instance(seed);
    const auto run = plan_with_relaxation(in.s, in.t, in.n, opt);
    const auto brute = brute_force_optimum(in.s, in.t, in.n, opt);
    const double relax = run.relaxation_objective, best = brute.allocation.objective,
                 rounded = run.allocation.objective;
    const double tol = 1e-6 * std::max(1.0, std::abs(best));
    const double secs = seconds_since(t0);
    worst_s = std::max(worst_s, secs);
    const auto m = evaluate_plan(run.plan, run.allocation.allocation, in.s, in.t, in.n, opt.averaging);
    agreement.add("tiny seed " + std::to_string(seed), m.objective, run.allocation.objective);
    if (!(relax >= best - tol && best >= rounded - tol) || secs >= 60.0) {
      if (ok)
        detail = "seed " + std::to_string(seed) + ": relax " + fmt("%.9g", relax) + ", brute " +
                 fmt("%.9g", best) + ", rounded " + fmt("%.9g", rounded) + ", " + fmt("%.2f", secs) + " s";
      ok = false;
    }
  }
  report(2, ok, ok ? "20/20 instances, slowest " + fmt("%.3f", worst_s) + " s" : detail);
}

struct DeskResult {
  double relax_obj = 0, base_obj = 0;
  std::optional<double> relax_jain, base_jain;
  std::vector<Violation> relax_violations, base_violations;
  int relax_longest = 0, base_longest = 0, battery = 0;
  double seconds = 0;
};

int longest_run(const Metrics& m) {
  int best = 0;
  for (const auto& mission : m.missions) best = std::max(best, mission.length);
  return best;
}

DeskResult run_desk(std::uint64_t seed, const PlanningOptions& opt) {
  const auto t0 = Clock::now();
  DeskResult r;
  const auto s = generate_scenario(GeneratorConfig::desk(seed));
  const auto t = build_throughput_matrix(s, RadioConfig{}, RateTable::default_table());
  MobilityConfig mob;
  mob.seed = seed;
  const auto traced = simulate_evacuation_traced(s, mob);
  mobility.add(s, mob, traced, seed);
  const auto& n = traced.counts;
  r.battery = s.uavs.front().battery_steps;

  const auto relax = plan_with_relaxation(s, t, n, opt);
  r.relax_violations = check_feasibility(relax.plan, s);
  const auto mr = evaluate_plan(relax.plan, relax.allocation.allocation, s, t, n, opt.averaging);
  agreement.add("desk seed " + std::to_string(seed), mr.objective, relax.allocation.objective);
  r.relax_obj = mr.objective;
  r.relax_jain = mr.jain;
  r.relax_longest = longest_run(mr);

  const auto base = baseline_plan(s);
  r.base_violations = check_feasibility(base, s);
  const auto mb = evaluate_plan(base, uniform_allocation(base, s, t), s, t, n, opt.averaging);
  r.base_obj = mb.objective;
  r.base_jain = mb.jain;
  r.base_longest = longest_run(mb);
  r.seconds = seconds_since(t0);
  return r;
}

void criteria_desk() {
  PlanningOptions opt;
  opt.averaging.horizon = 5;
  std::vector<DeskResult> results;
  int infeasible = 0, overlong = 0, failed = 0;
  std::string first_bad;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    try {
      results.push_back(run_desk(seed, opt));
    } catch (const Error& e) {
      ++failed;
      if (first_bad.empty()) first_bad = "seed " + std::to_string(seed) + ": " + e.what();
      results.emplace_back();
      continue;
    }
    const auto& r = results.back();
    std::fprintf(stderr, "desk seed %llu: %.1f s\n", static_cast<unsigned long long>(seed), r.seconds);
    const int v = static_cast<int>(r.relax_violations.size() + r.base_violations.size());
    infeasible += v > 0;
    overlong += r.relax_longest > r.battery || r.base_longest > r.battery;
    if (v > 0 && first_bad.empty())
      first_bad = "seed " + std::to_string(seed) + ": " +
                  describe(r.relax_violations.empty() ? r.base_violations.front()
                                                      : r.relax_violations.front());
  }
  double total = 0;
  for (const auto& r : results) total += r.seconds;
  report(3, infeasible == 0 && overlong == 0 && failed == 0,
         std::to_string(100 - infeasible - failed) + "/100 seeds feasible, " + std::to_string(overlong) +
             " over-long missions, " + std::to_string(failed) + " errors, " + fmt("%.1f", total) +
             " s" + (first_bad.empty() ? "" : "; first: " + first_bad));

  int obj_wins = 0, jain_wins = 0;
  double secs = 0;
  std::string rows;
  for (int i = 0; i < 10; ++i) {
    const auto& r = results[i];
    secs += r.seconds;
    obj_wins += r.relax_obj >= r.base_obj;
    jain_wins += r.relax_jain && r.base_jain && *r.relax_jain >= *r.base_jain;
    rows += " [" + std::to_string(i + 1) + ": obj " + fmt("%.4g", r.relax_obj) + "/" +
            fmt("%.4g", r.base_obj) + ", jain " + fmt("%.4f", r.relax_jain.value_or(NAN)) + "/" +
            fmt("%.4f", r.base_jain.value_or(NAN)) + "]";
  }
  report(4, obj_wins >= 8 && jain_wins >= 7 && secs < 600.0,
         "objective " + std::to_string(obj_wins) + "/10, jain " + std::to_string(jain_wins) +
             "/10, " + fmt("%.1f", secs) + " s;" + rows);
}

void criterion_closed_form() {
  auto s = testing::line_scenario(1, {0}, 1, 3, 1, 2);
  ThroughputMatrix t(2, 1);
  t.at(0, 0) = 10;
  t.at(1, 0) = 5;
  VehicleCounts n(2, 1);
  n.at(0, 0) = n.at(1, 0) = 1;
  Plan p(1, 1);
  p.at(0, 0) = Action::cover(0);
  PlanningOptions opt;
  opt.averaging.horizon = 1;
  const auto a = allocate_spectrum(p, s, t, n, opt);
  const double f0 = a.allocation.value(0, 0, 0, 0), f1 = a.allocation.value(1, 0, 0, 0);
  const bool ok = std::abs(f0 - 1.0 / 3) <= 1e-6 && std::abs(f1 - 2.0 / 3) <= 1e-6 &&
                  std::abs(f0 * 10 - 10.0 / 3) <= 1e-6 && std::abs(f1 * 5 - 10.0 / 3) <= 1e-6 &&
                  std::abs(a.objective - 10.0 / 3) <= 1e-6;
  report(5, ok, "phi = (" + fmt("%.9f", f0) + ", " + fmt("%.9f", f1) + "), objective " +
                    fmt("%.9f", a.objective));
}

void criterion_mobility() {
  auto s = testing::line_scenario(1, {0}, 1, 3, 1);
  s.areas = {{0, {0.0, 0.0}, 100.0, 2, 10}};
  s.area_graph = {{}, {0}, {0}};
  s.step_duration_s = 10;
  MobilityConfig cfg;
  cfg.total_vehicles = 3;
  const auto r = simulate_evacuation_traced(s, cfg);
  const bool hand = r.trace.arrival_tick == std::vector<std::int64_t>{2, 3, 4};
  std::string ticks;
  for (auto t : r.trace.arrival_tick) ticks += (ticks.empty() ? "" : ",") + std::to_string(t);
  report(6, hand && mobility.first_bad.empty() && mobility.runs == 100,
         std::to_string(mobility.runs) + " runs checked" +
             (mobility.first_bad.empty() ? "" : "; " + mobility.first_bad) + "; hand example exits at " +
             ticks);
}

void criterion_agreement() {
  report(7, agreement.first_bad.empty() && agreement.plans > 0,
         std::to_string(agreement.plans) + " plans, worst relative gap " + fmt("%.3g", agreement.worst) +
             (agreement.first_bad.empty() ? "" : "; " + agreement.first_bad));
}

std::vector<std::string> pipeline_outputs(std::uint64_t seed) {
  PlanningOptions opt;
  opt.averaging.horizon = 5;
  const auto s = generate_scenario(GeneratorConfig::desk(seed));
  const auto t = build_throughput_matrix(s, RadioConfig{}, RateTable::default_table());
  MobilityConfig mob;
  mob.seed = seed;
  mob.departure_spread_ticks = 600;
  const auto n = simulate_evacuation(s, mob);
  const auto relax = plan_with_relaxation(s, t, n, opt);
  const auto base = baseline_plan(s);
  const auto base_alloc = uniform_allocation(base, s, t);
  const auto mr = evaluate_plan(relax.plan, relax.allocation.allocation, s, t, n, opt.averaging);
  const auto mb = evaluate_plan(base, base_alloc, s, t, n, opt.averaging);
  return {scenario_to_json(s),
          throughput_to_csv(t),
          counts_to_csv(n),
          format_stats(relax.stats),
          plan_to_json(relax.plan),
          allocation_to_csv(relax.allocation.allocation),
          plan_to_json(base),
          allocation_to_csv(base_alloc),
          steps_csv(mr) + areas_csv(mr) + summary_json(mr),
          steps_csv(mb) + areas_csv(mb) + summary_json(mb)};
}

void criterion_determinism() {
  const char* stages[] = {"scenario", "throughput", "counts", "model", "relax plan", "relax allocation",
                          "baseline plan", "baseline allocation", "relax metrics", "baseline metrics"};
  const auto a = pipeline_outputs(42), b = pipeline_outputs(42);
  std::string diff;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) diff += std::string(diff.empty() ? "" : ", ") + stages[i];
  report(8, diff.empty(), diff.empty() ? std::to_string(a.size()) + " stages identical" : "differs: " + diff);
}

}  // namespace

// Optional arguments select criteria by number; 4 runs together with 3.
int main(int argc, char** argv) {
  const auto t0 = Clock::now();
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Step {
    int id;
    void (*fn)();
  };
  const Step steps[] = {{1, criterion_linkbudget}, {2, criterion_sandwich}, {3, criteria_desk},
                        {5, criterion_closed_form}, {6, criterion_mobility}, {7, criterion_agreement},
                        {8, criterion_determinism}};
  for (const auto& st : steps) {
    if (!only.empty() && std::find(only.begin(), only.end(), st.id) == only.end()) continue;
    try {
      st.fn();
    } catch (const std::exception& e) {
      report(st.id, false, std::string("exception: ") + e.what());
      if (st.id == 3) report(4, false, "not run");
    }
  }
  std::printf("%d failure(s), %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
