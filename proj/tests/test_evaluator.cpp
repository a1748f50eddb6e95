#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "uavcov/error.hpp"
#include "uavcov/evaluator.hpp"
#include "uavcov/plan.hpp"

namespace uavcov {
namespace {

using testing::line_scenario;

Plan plan_of(int uavs, std::vector<std::vector<Action>> rows) {
  Plan p(uavs, static_cast<int>(rows.front().size()));
  for (int d = 0; d < uavs; ++d)
    for (int k = 0; k < p.num_steps(); ++k) p.at(d, k) = rows[d][k];
  return p;
}

TEST(Feasibility, ValidPlanHasNoViolations) {
  const auto s = line_scenario(3, {0}, 1, 4, 5);
  const auto p = plan_of(1, {{Action::cover(0), Action::travel(0, 1), Action::cover(1),
                              Action::travel(1, 0), Action::recharge(0)}});
  EXPECT_TRUE(check_feasibility(p, s).empty());
}

TEST(Feasibility, TravelOverNonLink) {
  const auto s = line_scenario(3, {0}, 1, 4, 2);
  const auto p = plan_of(1, {{Action::travel(0, 2), Action::cover(2)}});
  const auto v = check_feasibility(p, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, Rule::LinkMembership);
  EXPECT_EQ(v[0].step, 0);
}

TEST(Feasibility, BatteryWindowAtFirstOffendingStep) {
  const auto s = line_scenario(1, {0}, 1, 3, 6);
  Plan p(1, 6);
  for (int k = 0; k < 6; ++k) p.at(0, k) = Action::cover(0);
  const auto v = check_feasibility(p, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, Rule::BatteryWindow);
  EXPECT_EQ(v[0].step, 3);
}

TEST(Feasibility, ContinuityRules) {
  const auto s = line_scenario(3, {0, 2}, 1, 5, 5);
  Plan p(1, 5);
  p.at(0, 0) = Action::cover(1);
  p.at(0, 1) = Action::recharge(1);
  p.at(0, 2) = Action::travel(0, 1);
  p.at(0, 4) = Action::cover(7);
  const auto v = check_feasibility(p, s);
  ASSERT_EQ(v.size(), 5u);
  const std::vector<Rule> want{Rule::CoverContinuity, Rule::RechargeSiteMembership,
                               Rule::TravelContinuity, Rule::ActionExclusivity, Rule::UnknownZone};
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(v[k].step, k);
    EXPECT_EQ(v[k].rule, want[k]) << describe(v[k]);
  }
}

TEST(Feasibility, StartsAtHome) {
  const auto s = line_scenario(2, {0, 1}, 2, 5, 1);
  // uav 1 starts at zone 1
  const auto p = plan_of(2, {{Action::cover(0)}, {Action::recharge(1)}});
  EXPECT_TRUE(check_feasibility(p, s).empty());
  const auto q = plan_of(2, {{Action::cover(1)}, {Action::cover(1)}});
  const auto v = check_feasibility(q, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].uav, 0);
}

TEST(Feasibility, DimensionMismatch) {
  EXPECT_THROW(check_feasibility(Plan(2, 3), line_scenario(1, {0}, 1, 3, 3)), InputError);
}

struct OneZone {
  Scenario s = line_scenario(1, {0}, 1, 5, 1, 1);
  ThroughputMatrix t{1, 1};
  VehicleCounts n{1, 1};
};

TEST(Evaluate, AllRecharge) {
  auto s = line_scenario(1, {0}, 1, 5, 4, 2);
  ThroughputMatrix t(2, 1);
  t.at(0, 0) = t.at(1, 0) = 1e6;
  VehicleCounts n(2, 4);
  n.at(0, 1) = 3;
  Plan p(1, 4);
  for (int k = 0; k < 4; ++k) p.at(0, k) = Action::recharge(0);
  const auto m = evaluate_plan(p, {}, s, t, n, 2);
  EXPECT_EQ(m.objective, 0.0);
  EXPECT_EQ(m.total_bits, 0.0);
  EXPECT_FALSE(m.jain.has_value());
  EXPECT_DOUBLE_EQ(m.actions.cover, 0.0);
  EXPECT_DOUBLE_EQ(m.actions.travel, 0.0);
  EXPECT_DOUBLE_EQ(m.actions.recharge, 1.0);
  EXPECT_TRUE(m.missions.empty());
  ASSERT_TRUE(m.mean_replenished.has_value());
  EXPECT_DOUBLE_EQ(*m.mean_replenished, 0.0);
}

TEST(Evaluate, PerUserThroughput) {
  OneZone f;
  f.t.at(0, 0) = 10e6;
  f.n.at(0, 0) = 5;
  Plan p(1, 1);
  p.at(0, 0) = Action::cover(0);
  AllocationMatrix phi{{{0, 0, 0, 0, 1.0}}};
  const auto m = evaluate_plan(p, phi, f.s, f.t, f.n, 1);
  EXPECT_DOUBLE_EQ(m.mu[0], 2e6);
  EXPECT_DOUBLE_EQ(m.objective, 2e6);
  EXPECT_DOUBLE_EQ(m.step_total_bps[0], 10e6);
  EXPECT_DOUBLE_EQ(m.total_bits, 10e6 * 600.0);
}

TEST(Evaluate, TwoUavsSumOnOneArea) {
  auto s = line_scenario(2, {0, 1}, 2, 5, 1, 1);
  ThroughputMatrix t(1, 2);
  t.at(0, 0) = 10;
  t.at(0, 1) = 6;
  VehicleCounts n(1, 1);
  n.at(0, 0) = 4;
  const auto p = plan_of(2, {{Action::cover(0)}, {Action::cover(1)}});
  AllocationMatrix phi{{{0, 0, 0, 0, 0.5}, {0, 1, 0, 1, 0.5}}};
  phi.normalize();
  EXPECT_DOUBLE_EQ(evaluate_plan(p, phi, s, t, n, 1).mu[0], (5.0 + 3.0) / 4.0);
}

TEST(Evaluate, RollingAverageAndObjective) {
  auto s = line_scenario(1, {0}, 1, 5, 4, 2);
  ThroughputMatrix t(2, 1);
  t.at(0, 0) = 8;
  t.at(1, 0) = 8;
  VehicleCounts n(2, 4);
  for (int k = 0; k < 4; ++k) n.at(0, k) = 1;
  n.at(1, 3) = 2;  // area 1 only counts at step 3
  Plan p(1, 4);
  p.at(0, 0) = Action::cover(0);
  p.at(0, 1) = Action::recharge(0);
  p.at(0, 2) = Action::cover(0);
  p.at(0, 3) = Action::cover(0);
  AllocationMatrix phi{{{0, 0, 0, 0, 1.0}, {0, 0, 2, 0, 1.0}, {0, 0, 3, 0, 0.5}, {1, 0, 3, 0, 0.5}}};
  phi.normalize();
  const auto m = evaluate_plan(p, phi, s, t, n, 1);
  // area 0: mu = 8, 0, 8, 4 ; window {k-1, k}
  EXPECT_DOUBLE_EQ(m.mubar[0 * 4 + 0], 8.0);
  EXPECT_DOUBLE_EQ(m.mubar[0 * 4 + 1], 4.0);
  EXPECT_DOUBLE_EQ(m.mubar[0 * 4 + 2], 4.0);
  EXPECT_DOUBLE_EQ(m.mubar[0 * 4 + 3], 6.0);
  // area 1 at step 3: mu = 4/2 = 2, earlier step has N = 0 so mu = 0
  EXPECT_DOUBLE_EQ(m.mubar[1 * 4 + 3], 1.0);
  EXPECT_FALSE(m.included[1 * 4 + 2]);
  EXPECT_DOUBLE_EQ(m.objective, 1.0);
  // Literal window divides by H.
  const auto lit = evaluate_plan(p, phi, s, t, n, Averaging{1, WindowRule::Literal});
  EXPECT_DOUBLE_EQ(lit.mubar[0], 8.0);
  EXPECT_DOUBLE_EQ(lit.mubar[3], 12.0);
  // Missions: [0], [2,3]; replenished 1 at the single recharge.
  ASSERT_EQ(m.missions.size(), 2u);
  EXPECT_EQ(m.missions[1].start, 2);
  EXPECT_EQ(m.missions[1].length, 2);
  EXPECT_DOUBLE_EQ(*m.mean_replenished, 1.0);
  EXPECT_DOUBLE_EQ(m.actions.cover + m.actions.travel + m.actions.recharge, 1.0);
  // Jain over area totals 8+0+8+4 = 20 and 4, times the step length.
  EXPECT_NEAR(*m.jain, (24.0 * 24.0) / (2.0 * (400.0 + 16.0)), 1e-12);
}

TEST(Evaluate, RejectsInconsistentAllocation) {
  OneZone f;
  f.t.at(0, 0) = 1;
  f.n.at(0, 0) = 1;
  Plan p(1, 1);
  p.at(0, 0) = Action::recharge(0);
  EXPECT_THROW(evaluate_plan(p, {{{0, 0, 0, 0, 0.5}}}, f.s, f.t, f.n, 1), InputError);
  p.at(0, 0) = Action::cover(0);
  EXPECT_THROW(evaluate_plan(p, {{{0, 0, 0, 0, 1.5}}}, f.s, f.t, f.n, 1), InputError);
  EXPECT_THROW(evaluate_plan(p, {}, f.s, ThroughputMatrix(2, 1), f.n, 1), InputError);
  EXPECT_THROW(evaluate_plan(p, {}, f.s, f.t, VehicleCounts(1, 2), 1), InputError);
}

TEST(Evaluate, TotalEqualsVehicleWeightedSum) {
  const auto in = testing::tiny_instance(5);
  Plan p(static_cast<int>(in.s.uavs.size()), in.s.num_steps);
  for (int d = 0; d < p.num_uavs(); ++d)
    for (int k = 0; k < p.num_steps(); ++k)
      p.at(d, k) = k % 2 ? Action::recharge(in.s.uavs[d].home_zone)
                         : Action::cover(in.s.uavs[d].home_zone);
  AllocationMatrix phi;
  for (int d = 0; d < p.num_uavs(); ++d)
    for (int k = 0; k < p.num_steps(); k += 2)
      for (int a = 0; a < static_cast<int>(in.s.areas.size()); ++a)
        if (in.t.at(a, in.s.uavs[d].home_zone) > 0)
          phi.entries.push_back({a, d, k, in.s.uavs[d].home_zone, 0.1});
  phi.normalize();
  const auto m = evaluate_plan(p, phi, in.s, in.t, in.n, 2);
  double expect = 0.0;
  for (int a = 0; a < m.num_areas; ++a)
    for (int k = 0; k < m.num_steps; ++k) expect += in.n.at(a, k) * m.mu[a * m.num_steps + k];
  EXPECT_NEAR(m.total_bits, expect * in.s.step_duration_s, 1e-6 * std::max(1.0, expect));
}

TEST(Jain, Values) {
  EXPECT_DOUBLE_EQ(jain_index({1, 1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(jain_index({1, 0, 0, 0}), 0.25);
  EXPECT_DOUBLE_EQ(jain_index({2, 4}), 0.9);
  EXPECT_NEAR(jain_index({3, 7, 1}), jain_index({30, 70, 10}), 1e-15);
  EXPECT_THROW(jain_index({0, 0}), DomainError);
  EXPECT_THROW(jain_index({}), DomainError);
  EXPECT_THROW(jain_index({1, -1}), DomainError);
}

TEST(Exports, CsvAndSummary) {
  OneZone f;
  f.t.at(0, 0) = 10;
  f.n.at(0, 0) = 5;
  Plan p(1, 1);
  p.at(0, 0) = Action::cover(0);
  const auto m = evaluate_plan(p, {{{0, 0, 0, 0, 1.0}}}, f.s, f.t, f.n, 1);
  EXPECT_EQ(steps_csv(m), "step,total_bps,min_mubar_bps\n0,10,2\n");
  EXPECT_EQ(areas_csv(m), "area_id,total_bits\n0,6000\n");
  const auto back = summary_from_json(summary_json(m));
  EXPECT_DOUBLE_EQ(back.objective, 2.0);
  EXPECT_DOUBLE_EQ(*back.jain, 1.0);
  EXPECT_EQ(back.missions, 1);
  EXPECT_FALSE(back.mean_replenished.has_value());
  EXPECT_THROW(summary_from_json("{}"), InputError);
}

}  // namespace
}  // namespace uavcov
