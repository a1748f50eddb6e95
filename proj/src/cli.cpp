#include "uavcov/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "uavcov/baseline.hpp"
#include "uavcov/error.hpp"
#include "uavcov/evaluator.hpp"
#include "uavcov/io.hpp"
#include "uavcov/linkbudget.hpp"
#include "uavcov/mobility.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov::cli {

namespace fs = std::filesystem;

namespace {

struct Inputs {
  std::string scenario, counts, tmatrix;
};

struct GeneratorOverrides {
  std::optional<int> rows, cols, areas, uavs, sites, battery, steps;
  std::optional<double> step_duration, link_range;
};

struct RunConfig {
  std::uint64_t seed = 7;
  std::string output;
  Inputs in;
  std::string preset = "full";
  GeneratorOverrides gen;
  MobilityConfig mob;
  RadioConfig radio;
  std::string rate_table;
  std::string strategy = "relax";
  int horizon = 30;
  bool literal_window = false;
  std::string plan, alloc;
  std::vector<std::string> summaries;
};

void add_inputs(CLI::App* sub, Inputs& in, bool counts, bool tmatrix) {
  sub->add_option("--scenario", in.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
  if (counts)
    sub->add_option("--counts", in.counts, "vehicle counts CSV")->required()->check(CLI::ExistingFile);
  if (tmatrix)
    sub->add_option("--tmatrix", in.tmatrix, "throughput matrix CSV")
        ->required()
        ->check(CLI::ExistingFile);
}

void print_warnings(const ValidationReport& r, std::ostream& err) {
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
}

Scenario load_scenario(const std::string& path, std::ostream& err) {
  Scenario s = read_scenario(path);
  auto report = validate_scenario(s);
  if (!report.ok()) throw InstanceError("invalid scenario: " + report.violations.front());
  print_warnings(report, err);
  return s;
}

PlanningOptions planning_options(const RunConfig& c) {
  PlanningOptions o;
  o.averaging.horizon = c.horizon;
  o.averaging.rule = c.literal_window ? WindowRule::Literal : WindowRule::Truncated;
  return o;
}

fs::path sibling(const std::string& base, const std::string& suffix) {
  fs::path p(base);
  return p.replace_extension().string() + suffix;
}

int do_gen(RunConfig& c, std::ostream& out, std::ostream& err) {
  GeneratorConfig g = c.preset == "desk" ? GeneratorConfig::desk(c.seed) : GeneratorConfig{};
  g.seed = c.seed;
  const auto& o = c.gen;
  auto apply = [](auto& field, const auto& v) {
    if (v) field = *v;
  };
  apply(g.zone_rows, o.rows);
  apply(g.zone_cols, o.cols);
  apply(g.num_areas, o.areas);
  apply(g.num_uavs, o.uavs);
  apply(g.num_recharge_sites, o.sites);
  apply(g.battery_steps, o.battery);
  apply(g.num_steps, o.steps);
  apply(g.step_duration_s, o.step_duration);
  apply(g.link_range_m, o.link_range);
  const Scenario s = generate_scenario(g);
  print_warnings(validate_scenario(s), err);
  write_scenario(s, c.output);
  out << "wrote " << c.output << ": " << s.zones.size() << " zones, " << s.areas.size()
      << " areas, " << s.uavs.size() << " uavs, " << s.num_steps << " steps\n";
  return 0;
}

int do_mobility(RunConfig& c, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(c.in.scenario, err);
  c.mob.seed = c.seed;
  const auto n = simulate_evacuation(s, c.mob);
  io::write_text(c.output, counts_to_csv(n));
  out << "wrote " << c.output << "\n";
  return 0;
}

int do_linkbudget(RunConfig& c, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(c.in.scenario, err);
  c.radio.validate();
  const RateTable table = c.rate_table.empty() ? RateTable::default_table(c.radio.bandwidth_hz)
                                               : rate_table_from_csv(io::read_text(c.rate_table));
  const auto t = build_throughput_matrix(s, c.radio, table);
  print_warnings(validate_scenario(s, &t), err);
  io::write_text(c.output, throughput_to_csv(t));
  out << "wrote " << c.output << "\n";
  return 0;
}

struct Loaded {
  Scenario s;
  ThroughputMatrix t;
  VehicleCounts n;
};

Loaded load_all(const RunConfig& c, std::ostream& err) {
  Loaded l{read_scenario(c.in.scenario), throughput_from_csv(io::read_text(c.in.tmatrix)),
           counts_from_csv(io::read_text(c.in.counts))};
  auto report = validate_scenario(l.s, &l.t);
  if (!report.ok()) throw InstanceError("invalid scenario: " + report.violations.front());
  print_warnings(report, err);
  return l;
}

int do_plan(RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto l = load_all(c, err);
  const auto options = planning_options(c);
  Plan plan;
  AllocationMatrix alloc;
  if (c.strategy == "relax") {
    auto run = plan_with_relaxation(l.s, l.t, l.n, options);
    out << format_stats(run.stats);
    out << "relaxation objective " << io::format_double(run.relaxation_objective) << " bps\n";
    out << "rounded objective " << io::format_double(run.allocation.objective) << " bps\n";
    plan = std::move(run.plan);
    alloc = std::move(run.allocation.allocation);
  } else {
    plan = baseline_plan(l.s);
    alloc = uniform_allocation(plan, l.s, l.t);
  }
  const auto violations = check_feasibility(plan, l.s);
  if (!violations.empty()) throw InstanceError("plan infeasible: " + describe(violations.front()));
  const fs::path alloc_path = c.alloc.empty() ? sibling(c.output, ".alloc.csv") : fs::path(c.alloc);
  io::write_text(c.output, plan_to_json(plan));
  io::write_text(alloc_path, allocation_to_csv(alloc));
  out << "wrote " << c.output << " and " << alloc_path.string() << "\n";
  return 0;
}

int do_eval(RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto l = load_all(c, err);
  const Plan plan = plan_from_json(io::read_text(c.plan));
  const auto violations = check_feasibility(plan, l.s);
  if (!violations.empty()) {
    err << "error: plan infeasible (" << violations.size()
        << " violations), first: " << describe(violations.front()) << "\n";
    return 1;
  }
  const auto alloc = allocation_from_csv(io::read_text(c.alloc));
  const auto m = evaluate_plan(plan, alloc, l.s, l.t, l.n, planning_options(c).averaging);
  const std::string summary = summary_json(m);
  io::write_text(sibling(c.output, ".steps.csv"), steps_csv(m));
  io::write_text(sibling(c.output, ".areas.csv"), areas_csv(m));
  io::write_text(sibling(c.output, ".summary.json"), summary);
  out << summary;
  return 0;
}

std::string show(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string("undefined");
}

int do_compare(RunConfig& c, std::ostream& out) {
  const auto a = summary_from_json(io::read_text(c.summaries[0]));
  const auto b = summary_from_json(io::read_text(c.summaries[1]));
  auto delta = [](double x, double y) { return io::format_double(x - y); };
  auto opt_delta = [](const std::optional<double>& x, const std::optional<double>& y) {
    return x && y ? io::format_double(*x - *y) : std::string("undefined");
  };
  out << std::left << std::setw(26) << "metric" << std::setw(24) << "first" << std::setw(24)
      << "second" << "first-second\n";
  auto line = [&](const std::string& name, const std::string& x, const std::string& y,
                  const std::string& d) {
    out << std::setw(26) << name << std::setw(24) << x << std::setw(24) << y << d << "\n";
  };
  const auto f = [](double v) { return io::format_double(v); };
  line("objective_bps", f(a.objective), f(b.objective), delta(a.objective, b.objective));
  line("jain", show(a.jain), show(b.jain), opt_delta(a.jain, b.jain));
  line("total_bits", f(a.total_bits), f(b.total_bits), delta(a.total_bits, b.total_bits));
  line("cover_fraction", f(a.actions.cover), f(b.actions.cover), delta(a.actions.cover, b.actions.cover));
  line("travel_fraction", f(a.actions.travel), f(b.actions.travel),
       delta(a.actions.travel, b.actions.travel));
  line("recharge_fraction", f(a.actions.recharge), f(b.actions.recharge),
       delta(a.actions.recharge, b.actions.recharge));
  line("missions", std::to_string(a.missions), std::to_string(b.missions),
       std::to_string(a.missions - b.missions));
  line("mean_mission_steps", f(a.mean_mission_steps), f(b.mean_mission_steps),
       delta(a.mean_mission_steps, b.mean_mission_steps));
  line("max_mission_steps", std::to_string(a.max_mission_steps), std::to_string(b.max_mission_steps),
       std::to_string(a.max_mission_steps - b.max_mission_steps));
  line("mean_battery_replenished", show(a.mean_replenished), show(b.mean_replenished),
       opt_delta(a.mean_replenished, b.mean_replenished));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Plan UAV coverage over evacuation scenarios.", "uavcov"};
  app.require_subcommand(1, 1);

  auto* gen = app.add_subcommand("gen", "generate a synthetic scenario");
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_option("-o,--output", c.output, "scenario JSON to write")->required();
  gen->add_option("--preset", c.preset, "size preset")->check(CLI::IsMember({"full", "desk"}));
  gen->add_option("--rows", c.gen.rows, "zone grid rows");
  gen->add_option("--cols", c.gen.cols, "zone grid columns");
  gen->add_option("--areas", c.gen.areas, "number of areas");
  gen->add_option("--uavs", c.gen.uavs, "number of UAVs");
  gen->add_option("--sites", c.gen.sites, "number of recharge sites");
  gen->add_option("--battery", c.gen.battery, "battery window in steps");
  gen->add_option("--steps", c.gen.steps, "number of time steps");
  gen->add_option("--step-duration", c.gen.step_duration, "step length in seconds");
  gen->add_option("--link-range", c.gen.link_range, "zone link range in meters");

  auto* mob = app.add_subcommand("mobility", "simulate the evacuation and count vehicles");
  add_inputs(mob, c.in, false, false);
  mob->add_option("--seed", c.seed, "random seed for departure times");
  mob->add_option("-o,--output", c.output, "counts CSV to write")->required();
  mob->add_option("--vehicles", c.mob.total_vehicles, "vehicles to evacuate");
  mob->add_option("--tick", c.mob.tick_s, "simulation tick in seconds");
  mob->add_option("--outflow", c.mob.outflow_per_tick, "vehicles leaving a segment per tick");
  mob->add_option("--spread", c.mob.departure_spread_ticks, "departure spread in ticks");

  auto* lb = app.add_subcommand("linkbudget", "compute the area-zone throughput matrix");
  add_inputs(lb, c.in, false, false);
  lb->add_option("-o,--output", c.output, "throughput CSV to write")->required();
  lb->add_option("--tx-power", c.radio.tx_power_dbm, "transmit power, dBm");
  lb->add_option("--noise", c.radio.noise_dbm, "noise power, dBm");
  lb->add_option("--freq", c.radio.freq_ghz, "carrier frequency, GHz");
  lb->add_option("--altitude", c.radio.h_bs_m, "UAV altitude, m");
  lb->add_option("--ue-height", c.radio.h_ue_m, "user equipment height, m");
  lb->add_option("--bandwidth", c.radio.bandwidth_hz, "channel bandwidth, Hz");
  lb->add_option("--rate-table", c.rate_table, "SNR to throughput CSV")->check(CLI::ExistingFile);

  auto* plan = app.add_subcommand("plan", "compute an action plan and spectrum allocation");
  add_inputs(plan, c.in, true, true);
  plan->add_option("--strategy", c.strategy, "planner")
      ->check(CLI::IsMember({"relax", "baseline"}));
  plan->add_option("--horizon", c.horizon, "rolling-average window H")->check(CLI::PositiveNumber);
  plan->add_flag("--literal-window", c.literal_window, "divide window sums by H");
  plan->add_option("-o,--output", c.output, "plan JSON to write")->required();
  plan->add_option("--alloc", c.alloc, "allocation CSV to write");

  auto* ev = app.add_subcommand("eval", "check a plan and compute its metrics");
  add_inputs(ev, c.in, true, true);
  ev->add_option("--plan", c.plan, "plan JSON")->required()->check(CLI::ExistingFile);
  ev->add_option("--alloc", c.alloc, "allocation CSV")->required()->check(CLI::ExistingFile);
  ev->add_option("--horizon", c.horizon, "rolling-average window H")->check(CLI::PositiveNumber);
  ev->add_flag("--literal-window", c.literal_window, "divide window sums by H");
  ev->add_option("-o,--output", c.output, "metrics file prefix")->required();

  auto* cmp = app.add_subcommand("compare", "compare two metrics summaries");
  cmp->add_option("summaries", c.summaries, "two summary JSON files")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* sub = &app;
    for (const auto* s : app.get_subcommands()) sub = s;
    out << sub->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return 2;
  }

  try {
    if (gen->parsed()) return do_gen(c, out, err);
    if (mob->parsed()) return do_mobility(c, out, err);
    if (lb->parsed()) return do_linkbudget(c, out, err);
    if (plan->parsed()) return do_plan(c, out, err);
    if (ev->parsed()) return do_eval(c, out, err);
    if (cmp->parsed()) return do_compare(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace uavcov::cli
