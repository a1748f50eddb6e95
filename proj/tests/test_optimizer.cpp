#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "uavcov/error.hpp"
#include "uavcov/evaluator.hpp"
#include "uavcov/optimizer.hpp"

namespace uavcov {
namespace {

using testing::line_scenario;

PlanningOptions horizon(int h) {
  PlanningOptions o;
  o.averaging.horizon = h;
  return o;
}

struct Small {
  Scenario s = line_scenario(2, {0}, 1, 2, 3, 2);
  ThroughputMatrix t{2, 2};
  VehicleCounts n{2, 3};
  Small() {
    for (int a = 0; a < 2; ++a) {
      for (int z = 0; z < 2; ++z) t.at(a, z) = 1e6 * (1 + a + z);
      for (int k = 0; k < 3; ++k) n.at(a, k) = 1 + a;
    }
  }
};

TEST(Model, VariableCounts) {
  Small f;
  const auto m = build_model(f.s, f.t, f.n, 1);
  const auto& st = m.stats();
  EXPECT_EQ(st.cover_vars, 6);
  EXPECT_EQ(st.travel_vars, 6);
  EXPECT_EQ(st.recharge_vars, 3);
  EXPECT_EQ(st.spectrum_vars, 12);
  EXPECT_EQ(st.throughput_vars, 6);
  EXPECT_EQ(st.total_vars(), 6 + 6 + 3 + 12 + 6 + 1);
  EXPECT_EQ(st.total_vars(), m.program().num_columns());
}

TEST(Model, RowCounts) {
  Small f;
  const auto m = build_model(f.s, f.t, f.n, 1);
  const auto& st = m.stats();
  EXPECT_EQ(st.one_action_rows, 3);
  EXPECT_EQ(st.cover_continuity_rows, 6);
  EXPECT_EQ(st.recharge_continuity_rows, 3);
  EXPECT_EQ(st.travel_continuity_rows, 6);
  EXPECT_EQ(st.battery_rows, 1);  // windows ending at k = B .. K-1
  EXPECT_EQ(st.uav_spectrum_rows, 6);
  EXPECT_EQ(st.zone_spectrum_rows, 6);
  EXPECT_EQ(st.throughput_rows, 6);
  EXPECT_EQ(st.objective_rows, 6);
  EXPECT_EQ(st.total_rows(), m.program().num_rows());
  EXPECT_EQ(st.nonzeros, m.program().num_nonzeros());
  const auto text = format_stats(st);
  EXPECT_NE(text.find("spectrum 12"), std::string::npos);
}

TEST(Model, PruningZeroThroughputPairs) {
  Small f;
  f.t.at(1, 1) = 0.0;
  EXPECT_EQ(build_model(f.s, f.t, f.n, 1).stats().spectrum_vars, 12 - 3);
  f.t.at(0, 1) = 0.0;
  const auto m = build_model(f.s, f.t, f.n, 1);
  EXPECT_EQ(m.stats().spectrum_vars, 12 - 6);
  EXPECT_EQ(m.stats().uav_spectrum_rows, 3);
  EXPECT_EQ(m.stats().zone_spectrum_rows, 3);
}

TEST(Model, ExcludedPairsAndEmptyObjective) {
  Small f;
  f.n.at(0, 1) = 0;
  const auto m = build_model(f.s, f.t, f.n, 1);
  EXPECT_EQ(m.stats().throughput_vars, 5);
  EXPECT_EQ(m.mu(0, 1), -1);
  EXPECT_GE(m.mu(0, 0), 0);
  VehicleCounts zero(2, 3);
  try {
    build_model(f.s, f.t, zero, 1);
    FAIL();
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("objective undefined"), std::string::npos);
  }
}

TEST(Model, DimensionMismatch) {
  Small f;
  EXPECT_THROW(build_model(f.s, ThroughputMatrix(3, 2), f.n, 1), InputError);
  EXPECT_THROW(build_model(f.s, f.t, VehicleCounts(2, 4), 1), InputError);
  EXPECT_THROW(build_model(f.s, f.t, f.n, 0), ConfigError);
}

struct Tiny {
  Scenario s = line_scenario(1, {0}, 1, 2, 3, 1);
  ThroughputMatrix t{1, 1};
  VehicleCounts n{1, 3};
  Tiny() {
    t.at(0, 0) = 1.0;
    for (int k = 0; k < 3; ++k) n.at(0, k) = 1;
  }
};

TEST(Relaxation, TinyBoundsIntegerOptimum) {
  Tiny f;
  const auto relax = solve_relaxation(build_model(f.s, f.t, f.n, 1));
  // Covering two thirds of every step is feasible in the relaxation.
  EXPECT_NEAR(relax.objective, 2.0 / 3.0, 1e-6);
  const auto brute = brute_force_optimum(f.s, f.t, f.n, horizon(1));
  EXPECT_NEAR(brute.allocation.objective, 0.5, 1e-6);
  EXPECT_GE(relax.objective + 1e-6, brute.allocation.objective);
}

TEST(Relaxation, ZeroThroughputGivesZero) {
  Tiny f;
  f.t.at(0, 0) = 0.0;
  EXPECT_NEAR(solve_relaxation(build_model(f.s, f.t, f.n, 1)).objective, 0.0, 1e-9);
}

TEST(Relaxation, OneActionPerStep) {
  Small f;
  const auto m = build_model(f.s, f.t, f.n, 2);
  const auto r = solve_relaxation(m);
  for (int k = 0; k < 3; ++k) {
    double sum = 0.0;
    for (int z = 0; z < 2; ++z) sum += r.cover_value(0, k, z) + r.recharge_value(0, k, z);
    for (int l = 0; l < 2; ++l) sum += r.travel_value(0, k, l);
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
  EXPECT_EQ(r.recharge_value(0, 0, 1), 0.0);
}

TEST(Relaxation, ScalesWithThroughput) {
  const auto in = testing::tiny_instance(3);
  const auto base = solve_relaxation(build_model(in.s, in.t, in.n, 2));
  for (double c : {4.0, 3.0}) {
    ThroughputMatrix scaled = in.t;
    for (int a = 0; a < scaled.num_areas(); ++a)
      for (int z = 0; z < scaled.num_zones(); ++z) scaled.at(a, z) *= c;
    const auto r = solve_relaxation(build_model(in.s, scaled, in.n, 2));
    EXPECT_NEAR(r.objective, c * base.objective, 1e-6 * std::max(1.0, c * base.objective));
    if (c == 4.0) EXPECT_EQ(round_solution(r, in.s), round_solution(base, in.s));
  }
}

TEST(Relaxation, RemovingUavNeverHelps) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto in = testing::tiny_instance(seed);
    if (in.s.uavs.size() < 2) continue;
    const double both = solve_relaxation(build_model(in.s, in.t, in.n, 2)).objective;
    in.s.uavs.pop_back();
    const double one = solve_relaxation(build_model(in.s, in.t, in.n, 2)).objective;
    EXPECT_LE(one, both + 1e-6 * std::max(1.0, both)) << "seed " << seed;
  }
}

// One UAV on zones 0 - 1 with a recharge site at 0 and one step.
FractionalSolution hand_solution(const Scenario& s) {
  FractionalSolution f;
  f.num_uavs = 1;
  f.num_steps = s.num_steps;
  f.num_zones = 2;
  f.num_areas = 1;
  f.links = s.links;
  f.recharge_sites = s.recharge_sites;
  f.gamma.assign(2 * s.num_steps, 0.0);
  f.tau.assign(2 * s.num_steps, 0.0);
  f.rho.assign(s.num_steps, 0.0);
  return f;
}

TEST(Rounding, HighestVariableWins) {
  const auto s = line_scenario(2, {0}, 1, 5, 1);
  auto f = hand_solution(s);
  f.gamma[0] = 0.3;  // cover zone 0
  f.tau[0] = 0.7;    // link 0 -> 1
  const auto p = round_solution(f, s);
  EXPECT_EQ(p.at(0, 0), Action::travel(0, 1));
}

TEST(Rounding, InfeasibleArgmaxMasked) {
  const auto s = line_scenario(2, {0}, 1, 5, 1);
  auto f = hand_solution(s);
  f.tau[1] = 0.9;    // link 1 -> 0, but the UAV is at zone 0
  f.gamma[1] = 0.8;  // cover zone 1, also elsewhere
  f.gamma[0] = 0.1;
  EXPECT_EQ(round_solution(f, s).at(0, 0), Action::cover(0));
}

TEST(Rounding, TiesPreferCover) {
  const auto s = line_scenario(2, {0}, 1, 5, 1);
  auto f = hand_solution(s);
  f.gamma[0] = 0.5;
  f.tau[0] = 0.5;
  EXPECT_EQ(round_solution(f, s).at(0, 0), Action::cover(0));
  f.gamma[0] = 0.0;
  f.tau[0] = 0.0;
  EXPECT_EQ(round_solution(f, s).at(0, 0), Action::cover(0));
}

TEST(Rounding, ForcedRechargeAndReturn) {
  // Battery 3: after travelling to 1 and covering it the UAV must head back.
  const auto s = line_scenario(2, {0}, 1, 3, 5);
  auto f = hand_solution(s);
  f.tau[0 * 2 + 0] = 1.0;  // k0: 0 -> 1
  f.gamma[1 * 2 + 1] = 1.0;  // k1: cover 1
  f.gamma[2 * 2 + 1] = 1.0;  // k2: cover 1 again (unsafe)
  f.gamma[3 * 2 + 1] = 1.0;
  f.gamma[4 * 2 + 1] = 1.0;
  const auto p = round_solution(f, s);
  EXPECT_EQ(p.at(0, 0), Action::travel(0, 1));
  EXPECT_EQ(p.at(0, 1), Action::cover(1));
  EXPECT_EQ(p.at(0, 2), Action::travel(1, 0));
  EXPECT_EQ(p.at(0, 3), Action::recharge(0));
  EXPECT_TRUE(check_feasibility(p, s).empty());
}

TEST(Rounding, MismatchedSolutionRejected) {
  const auto s = line_scenario(2, {0}, 1, 5, 1);
  auto f = hand_solution(s);
  f.num_steps = 2;
  EXPECT_THROW(round_solution(f, s), InputError);
}

TEST(Allocation, ClosedFormSplit) {
  auto s = line_scenario(1, {0}, 1, 5, 1, 2);
  ThroughputMatrix t(2, 1);
  t.at(0, 0) = 10;
  t.at(1, 0) = 5;
  VehicleCounts n(2, 1);
  n.at(0, 0) = n.at(1, 0) = 1;
  Plan p(1, 1);
  p.at(0, 0) = Action::cover(0);
  const auto r = allocate_spectrum(p, s, t, n, horizon(1));
  EXPECT_NEAR(r.allocation.value(0, 0, 0, 0), 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(r.allocation.value(1, 0, 0, 0), 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(r.objective, 10.0 / 3.0, 1e-6);
}

TEST(Allocation, SymmetricAreasSplitEvenly) {
  auto s = line_scenario(1, {0}, 1, 5, 1, 3);
  ThroughputMatrix t(3, 1);
  VehicleCounts n(3, 1);
  for (int a = 0; a < 3; ++a) {
    t.at(a, 0) = 6;
    n.at(a, 0) = 2;
  }
  Plan p(1, 1);
  p.at(0, 0) = Action::cover(0);
  const auto r = allocate_spectrum(p, s, t, n, horizon(1));
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(r.allocation.value(a, 0, 0, 0), 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(r.objective, 1.0, 1e-6);
}

TEST(Allocation, NothingCovered) {
  Tiny f;
  Plan p(1, 3);
  for (int k = 0; k < 3; ++k) p.at(0, k) = Action::recharge(0);
  const auto r = allocate_spectrum(p, f.s, f.t, f.n, horizon(1));
  EXPECT_TRUE(r.allocation.entries.empty());
  EXPECT_EQ(r.objective, 0.0);
}

TEST(Allocation, SharedZoneSplitsSpectrum) {
  auto s = line_scenario(1, {0}, 2, 5, 1, 1);
  ThroughputMatrix t(1, 1);
  t.at(0, 0) = 4;
  VehicleCounts n(1, 1);
  n.at(0, 0) = 1;
  Plan p(2, 1);
  p.at(0, 0) = p.at(1, 0) = Action::cover(0);
  const auto r = allocate_spectrum(p, s, t, n, horizon(1));
  EXPECT_NEAR(r.objective, 4.0, 1e-6);
  EXPECT_NEAR(r.allocation.value(0, 0, 0, 0) + r.allocation.value(0, 1, 0, 0), 1.0, 1e-9);
}

TEST(BruteForce, AlternatesWithUnitBattery) {
  auto s = line_scenario(1, {0}, 1, 1, 6, 1);
  ThroughputMatrix t(1, 1);
  t.at(0, 0) = 2;
  VehicleCounts n(1, 6);
  for (int k = 0; k < 6; ++k) n.at(0, k) = 1;
  const auto r = brute_force_optimum(s, t, n, horizon(1));
  for (int k = 0; k + 1 < 6; ++k)
    EXPECT_TRUE(r.plan.at(0, k).type == ActionType::Recharge ||
                r.plan.at(0, k + 1).type == ActionType::Recharge);
  int covers = 0;
  for (int k = 0; k < 6; ++k) covers += r.plan.at(0, k).type == ActionType::Cover;
  EXPECT_EQ(covers, 3);
  EXPECT_NEAR(r.allocation.objective, 1.0, 1e-6);
  EXPECT_TRUE(check_feasibility(r.plan, s).empty());
}

TEST(BruteForce, SingleStep) {
  auto s = line_scenario(1, {0}, 1, 3, 1, 1);
  ThroughputMatrix t(1, 1);
  t.at(0, 0) = 9;
  VehicleCounts n(1, 1);
  n.at(0, 0) = 3;
  const auto r = brute_force_optimum(s, t, n, horizon(1));
  EXPECT_EQ(r.plan.at(0, 0), Action::cover(0));
  EXPECT_NEAR(r.allocation.objective, 3.0, 1e-9);
  EXPECT_EQ(r.joint_plans, 2u);
}

TEST(BruteForce, RefusesLargeInstances) {
  auto s = line_scenario(5, {0}, 1, 3, 3, 1);
  EXPECT_THROW(brute_force_optimum(s, ThroughputMatrix(1, 5), VehicleCounts(1, 3), horizon(1)),
               LimitError);
  s = line_scenario(2, {0}, 3, 3, 3, 1);
  EXPECT_THROW(brute_force_optimum(s, ThroughputMatrix(1, 2), VehicleCounts(1, 3), horizon(1)),
               LimitError);
  s = line_scenario(2, {0}, 1, 3, 7, 1);
  EXPECT_THROW(brute_force_optimum(s, ThroughputMatrix(1, 2), VehicleCounts(1, 7), horizon(1)),
               LimitError);
}

TEST(Pipeline, SandwichAndFeasibility) {
  for (std::uint64_t seed = 100; seed < 106; ++seed) {
    const auto in = testing::tiny_instance(seed);
    const auto opts = horizon(2);
    const auto run = plan_with_relaxation(in.s, in.t, in.n, opts);
    const auto brute = brute_force_optimum(in.s, in.t, in.n, opts);
    const double tol = 1e-6 * std::max(1.0, run.relaxation_objective);
    EXPECT_GE(run.relaxation_objective + tol, brute.allocation.objective) << "seed " << seed;
    EXPECT_GE(brute.allocation.objective + tol, run.allocation.objective) << "seed " << seed;
    EXPECT_TRUE(check_feasibility(run.plan, in.s).empty()) << "seed " << seed;
    const auto m = evaluate_plan(run.plan, run.allocation.allocation, in.s, in.t, in.n,
                                 opts.averaging);
    EXPECT_NEAR(m.objective, run.allocation.objective, 1e-6 * std::max(1.0, m.objective));
  }
}

TEST(Pipeline, Deterministic) {
  const auto in = testing::tiny_instance(42);
  const auto a = plan_with_relaxation(in.s, in.t, in.n, horizon(2));
  const auto b = plan_with_relaxation(in.s, in.t, in.n, horizon(2));
  EXPECT_EQ(plan_to_json(a.plan), plan_to_json(b.plan));
  EXPECT_EQ(allocation_to_csv(a.allocation.allocation), allocation_to_csv(b.allocation.allocation));
}

}  // namespace
}  // namespace uavcov
