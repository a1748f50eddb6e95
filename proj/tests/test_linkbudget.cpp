#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "uavcov/error.hpp"
#include "uavcov/linkbudget.hpp"

namespace uavcov {
namespace {

// Reference values from a separate evaluation of the micro-cell formula.
TEST(PathLoss, MatchesDirectEvaluation) {
  EXPECT_NEAR(path_loss_db(500, 50, 1.5, 1.8), 82.51824244, 1e-7);
  EXPECT_NEAR(path_loss_db(100, 50, 1.5, 1.8), 54.55944227, 1e-7);
  EXPECT_NEAR(path_loss_db(1, 1, 1, 1), 7.8, 1e-12);
}

TEST(PathLoss, RejectsNonPositiveArguments) {
  EXPECT_THROW(path_loss_db(0, 50, 1.5, 1.8), DomainError);
  EXPECT_THROW(path_loss_db(100, -1, 1.5, 1.8), DomainError);
  EXPECT_THROW(path_loss_db(100, 50, 0, 1.8), DomainError);
  EXPECT_THROW(path_loss_db(100, 50, 1.5, 0), DomainError);
}

TEST(PathLoss, MonotoneInEveryArgument) {
  double prev = path_loss_db(10, 50, 1.5, 1.8);
  for (double d = 20; d < 20000; d *= 1.7) {
    double pl = path_loss_db(d, 50, 1.5, 1.8);
    EXPECT_GT(pl, prev);
    prev = pl;
  }
  EXPECT_LT(path_loss_db(500, 60, 1.5, 1.8), path_loss_db(500, 50, 1.5, 1.8));
  EXPECT_LT(path_loss_db(500, 50, 2.0, 1.8), path_loss_db(500, 50, 1.5, 1.8));
}

TEST(Snr, Chain) {
  EXPECT_NEAR(snr_db(30, path_loss_db(500, 50, 1.5, 1.8), -121.45), 68.93175756, 1e-7);
  EXPECT_NEAR(snr_db(30, 151.45, -121.45), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(snr_db(0, 0, 0), 0.0);
}

TEST(RateTable, DefaultShape) {
  const auto t = RateTable::default_table();
  ASSERT_EQ(t.rows().size(), 15u);
  EXPECT_DOUBLE_EQ(t.rows().front().snr_threshold_db, -6.0);
  EXPECT_DOUBLE_EQ(t.rows().back().snr_threshold_db, 22.0);
  EXPECT_NEAR(t.rows().front().throughput_bps, 0.15 * 10e6, 1e-6);
  EXPECT_NEAR(t.rows().back().throughput_bps, 5.55 * 10e6, 1e-6);
}

TEST(RateTable, LookupBoundaries) {
  const RateTable t({{0.0, 1.0}, {5.0, 2.0}, {10.0, 4.0}});
  EXPECT_EQ(snr_to_throughput(-0.001, t), 0.0);
  EXPECT_EQ(snr_to_throughput(0.0, t), 1.0);
  EXPECT_EQ(snr_to_throughput(7.5, t), 2.0);
  EXPECT_EQ(snr_to_throughput(10.0, t), 4.0);
  EXPECT_EQ(snr_to_throughput(1e9, t), 4.0);
}

TEST(RateTable, RejectsBadRows) {
  EXPECT_THROW(RateTable(std::vector<RateRow>{}), ConfigError);
  EXPECT_THROW(RateTable({{1.0, 1.0}, {1.0, 2.0}}), ConfigError);
  EXPECT_THROW(RateTable({{1.0, 2.0}, {2.0, 1.0}}), ConfigError);
}

TEST(RateTable, CsvRoundTrip) {
  const auto t = RateTable::default_table(20e6);
  EXPECT_EQ(rate_table_from_csv(rate_table_to_csv(t)), t);
  EXPECT_THROW(rate_table_from_csv("snr,rate\n1,2\n"), InputError);
}

TEST(Radio, ValidateNamesField) {
  RadioConfig c;
  c.freq_ghz = 0;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "freq_ghz");
  }
}

TEST(ThroughputMatrix, AreaUnderZoneGetsTopRate) {
  auto s = testing::line_scenario(1, {0}, 1, 3, 1);
  s.areas[0].position = s.zones[0].position;
  const RadioConfig cfg;
  EXPECT_NEAR(slant_distance_m(s.zones[0].position, s.areas[0].position, cfg), 48.5, 1e-12);
  const auto table = RateTable::default_table();
  const auto t = build_throughput_matrix(s, cfg, table);
  EXPECT_DOUBLE_EQ(t.at(0, 0), table.rows().back().throughput_bps);
}

TEST(ThroughputMatrix, BeyondCutoffIsZero) {
  auto s = testing::line_scenario(1, {0}, 1, 3, 1);
  s.areas[0].position = {60000.0, 0.0};
  const auto t = build_throughput_matrix(s, RadioConfig{}, RateTable::default_table());
  EXPECT_EQ(t.at(0, 0), 0.0);
}

TEST(ThroughputMatrix, NonIncreasingInDistance) {
  const auto table = RateTable::default_table();
  const RadioConfig cfg;
  double prev = 1e300;
  for (double x = 0; x < 50000; x = x * 2 + 100) {
    double v = snr_to_throughput(
        snr_db(cfg.tx_power_dbm,
               path_loss_db(slant_distance_m({0, 0}, {x, 0}, cfg), cfg.h_bs_m, cfg.h_ue_m,
                            cfg.freq_ghz),
               cfg.noise_dbm),
        table);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(ThroughputMatrix, CsvRoundTripAndErrors) {
  ThroughputMatrix t(2, 3);
  t.at(0, 1) = 1.5e6;
  t.at(1, 2) = 0.1;
  EXPECT_EQ(throughput_from_csv(throughput_to_csv(t)), t);
  EXPECT_THROW(throughput_from_csv("area_id,zone_id,throughput_bps\n0,0,1\n0,0,2\n"), InputError);
  EXPECT_THROW(throughput_from_csv("area_id,zone_id,throughput_bps\n0,0,-1\n"), InputError);
}

}  // namespace
}  // namespace uavcov
