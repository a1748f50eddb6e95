#include "uavcov/linkbudget.hpp"

#include <algorithm>
#include <cmath>

#include "uavcov/error.hpp"
#include "uavcov/io.hpp"

namespace uavcov {

void RadioConfig::validate() const {
  if (!(freq_ghz > 0.0)) throw ConfigError("freq_ghz", "must be > 0");
  if (!(h_bs_m > 0.0)) throw ConfigError("h_bs_m", "must be > 0");
  if (!(h_ue_m > 0.0)) throw ConfigError("h_ue_m", "must be > 0");
  if (!(bandwidth_hz > 0.0)) throw ConfigError("bandwidth_hz", "must be > 0");
}

RateTable::RateTable(std::vector<RateRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ConfigError("rate_table", "must have at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!std::isfinite(rows_[i].snr_threshold_db) || !std::isfinite(rows_[i].throughput_bps) ||
        rows_[i].throughput_bps < 0.0)
      throw ConfigError("rate_table", "row " + std::to_string(i) + " is not finite and >= 0");
    if (i > 0 && !(rows_[i].snr_threshold_db > rows_[i - 1].snr_threshold_db))
      throw ConfigError("rate_table", "thresholds must be strictly increasing");
    if (i > 0 && rows_[i].throughput_bps < rows_[i - 1].throughput_bps)
      throw ConfigError("rate_table", "throughputs must be non-decreasing");
  }
}

RateTable RateTable::default_table(double bandwidth_hz) {
  constexpr int kRows = 15;
  std::vector<RateRow> rows;
  rows.reserve(kRows);
  for (int i = 0; i < kRows; ++i) {
    double efficiency = 0.15 + i * (5.55 - 0.15) / (kRows - 1);
    rows.push_back({-6.0 + 2.0 * i, efficiency * bandwidth_hz});
  }
  return RateTable(std::move(rows));
}

double RateTable::lookup(double snr_db) const {
  auto it = std::upper_bound(rows_.begin(), rows_.end(), snr_db,
                             [](double v, const RateRow& r) { return v < r.snr_threshold_db; });
  if (it == rows_.begin()) return 0.0;
  return std::prev(it)->throughput_bps;
}

ThroughputMatrix::ThroughputMatrix(int num_areas, int num_zones)
    : num_areas_(num_areas),
      num_zones_(num_zones),
      data_(static_cast<std::size_t>(num_areas) * num_zones, 0.0) {
  if (num_areas < 0 || num_zones < 0) throw InputError("negative matrix dimension");
}

double path_loss_db(double d_m, double h_bs_m, double h_ue_m, double f_ghz) {
  if (!(d_m > 0.0) || !(h_bs_m > 0.0) || !(h_ue_m > 0.0) || !(f_ghz > 0.0))
    throw DomainError("path_loss_db requires positive distance, heights and frequency");
  return 40.0 * std::log10(d_m) + 7.8 - 18.0 * std::log10(h_bs_m) - 18.0 * std::log10(h_ue_m) +
         2.0 * std::log10(f_ghz);
}

double snr_to_throughput(double snr_db, const RateTable& table) { return table.lookup(snr_db); }

double slant_distance_m(Point2 zone, Point2 area, const RadioConfig& cfg) {
  double dz = cfg.h_bs_m - cfg.h_ue_m;
  return std::sqrt(std::pow(zone.x - area.x, 2) + std::pow(zone.y - area.y, 2) + dz * dz);
}

ThroughputMatrix build_throughput_matrix(const Scenario& s, const RadioConfig& cfg,
                                         const RateTable& table) {
  cfg.validate();
  ThroughputMatrix t(static_cast<int>(s.areas.size()), static_cast<int>(s.zones.size()));
  for (const auto& a : s.areas) {
    for (const auto& z : s.zones) {
      double d = slant_distance_m(z.position, a.position, cfg);
      double pl = path_loss_db(d, cfg.h_bs_m, cfg.h_ue_m, cfg.freq_ghz);
      t.at(a.id, z.id) = snr_to_throughput(snr_db(cfg.tx_power_dbm, pl, cfg.noise_dbm), table);
    }
  }
  return t;
}

std::string throughput_to_csv(const ThroughputMatrix& t) {
  std::string out = "area_id,zone_id,throughput_bps\n";
  for (int a = 0; a < t.num_areas(); ++a)
    for (int z = 0; z < t.num_zones(); ++z)
      out += std::to_string(a) + "," + std::to_string(z) + "," + io::format_double(t.at(a, z)) +
             "\n";
  return out;
}

ThroughputMatrix throughput_from_csv(const std::string& text) {
  auto rows = io::parse_csv(text, "area_id,zone_id,throughput_bps");
  long long max_a = -1, max_z = -1;
  for (const auto& r : rows) {
    max_a = std::max(max_a, io::parse_int(r[0]));
    max_z = std::max(max_z, io::parse_int(r[1]));
  }
  ThroughputMatrix t(static_cast<int>(max_a + 1), static_cast<int>(max_z + 1));
  if (rows.size() != static_cast<std::size_t>((max_a + 1) * (max_z + 1)))
    throw InputError("throughput CSV must list every (area, zone) pair exactly once");
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    long long a = io::parse_int(r[0]), z = io::parse_int(r[1]);
    if (a < 0 || z < 0) throw InputError("negative id in throughput CSV");
    auto flat = static_cast<std::size_t>(a * (max_z + 1) + z);
    if (seen[flat]) throw InputError("duplicate (area, zone) pair in throughput CSV");
    seen[flat] = true;
    double v = io::parse_double(r[2]);
    if (!std::isfinite(v) || v < 0.0) throw InputError("throughput must be finite and >= 0");
    t.at(static_cast<int>(a), static_cast<int>(z)) = v;
  }
  return t;
}

std::string rate_table_to_csv(const RateTable& table) {
  std::string out = "snr_db,throughput_bps\n";
  for (const auto& r : table.rows())
    out += io::format_double(r.snr_threshold_db) + "," + io::format_double(r.throughput_bps) + "\n";
  return out;
}

RateTable rate_table_from_csv(const std::string& text) {
  std::vector<RateRow> rows;
  for (const auto& r : io::parse_csv(text, "snr_db,throughput_bps"))
    rows.push_back({io::parse_double(r[0]), io::parse_double(r[1])});
  return RateTable(std::move(rows));
}

}  // namespace uavcov
