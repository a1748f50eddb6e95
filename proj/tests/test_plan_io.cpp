#include <gtest/gtest.h>

#include "uavcov/error.hpp"
#include "uavcov/plan.hpp"

namespace uavcov {
namespace {

TEST(PlanJson, RoundTrip) {
  Plan p(2, 3);
  p.at(0, 0) = Action::cover(0);
  p.at(0, 1) = Action::travel(0, 1);
  p.at(0, 2) = Action::recharge(1);
  p.at(1, 0) = Action::recharge(2);
  p.at(1, 1) = Action::travel(2, 1);
  p.at(1, 2) = Action::cover(1);
  EXPECT_EQ(plan_from_json(plan_to_json(p)), p);
}

TEST(PlanJson, MissingRecordsStayUnassigned) {
  const auto p = plan_from_json(
      R"({"num_uavs":1,"num_steps":2,"actions":[{"uav_id":0,"step":1,"action":{"type":"cover","zone":3}}]})");
  EXPECT_EQ(p.at(0, 0).type, ActionType::Unassigned);
  EXPECT_EQ(p.at(0, 1), Action::cover(3));
}

TEST(PlanJson, Errors) {
  const std::string dup =
      R"({"num_uavs":1,"num_steps":1,"actions":[)"
      R"({"uav_id":0,"step":0,"action":{"type":"cover","zone":0}},)"
      R"({"uav_id":0,"step":0,"action":{"type":"cover","zone":1}}]})";
  EXPECT_THROW(plan_from_json(dup), InputError);
  EXPECT_THROW(plan_from_json(
                   R"({"num_uavs":1,"num_steps":1,"actions":[{"uav_id":0,"step":0,"action":{"type":"hover","zone":0}}]})"),
               InputError);
  EXPECT_THROW(plan_from_json(
                   R"({"num_uavs":1,"num_steps":1,"actions":[{"uav_id":0,"step":4,"action":{"type":"cover","zone":0}}]})"),
               InputError);
  EXPECT_THROW(plan_from_json(R"({"num_uavs":1})"), InputError);
  EXPECT_THROW(plan_from_json("not json"), InputError);
}

TEST(AllocationCsv, RoundTripIsExact) {
  AllocationMatrix m;
  m.entries = {{1, 0, 2, 3, 1.0 / 3.0}, {0, 1, 0, 0, 0.1}, {0, 0, 0, 0, 0.0}};
  m.normalize();
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.entries.front().area, 0);
  EXPECT_EQ(allocation_from_csv(allocation_to_csv(m)), m);
  EXPECT_DOUBLE_EQ(m.value(1, 0, 2, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.value(1, 0, 2, 2), 0.0);
}

TEST(AllocationCsv, Errors) {
  const std::string header = "area_id,uav_id,step,zone_id,phi\n";
  EXPECT_THROW(allocation_from_csv("area,uav,step,zone,phi\n"), InputError);
  EXPECT_THROW(allocation_from_csv(header + "0,0,0,0,1.5\n"), InputError);
  EXPECT_THROW(allocation_from_csv(header + "0,0,0,0,-0.1\n"), InputError);
  EXPECT_THROW(allocation_from_csv(header + "0,0,0,0,0.5\n0,0,0,0,0.2\n"), InputError);
  EXPECT_THROW(allocation_from_csv(header + "0,0,0\n"), InputError);
}

}  // namespace
}  // namespace uavcov
