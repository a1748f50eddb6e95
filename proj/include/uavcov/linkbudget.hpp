#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "uavcov/scenario.hpp"

namespace uavcov {

/// Radio parameters of a UAV micro-cell. Distances in meters, frequency in GHz.
struct RadioConfig {
  double tx_power_dbm = 30.0;
  double noise_dbm = -121.45;
  double freq_ghz = 1.8;
  double h_bs_m = 50.0;  ///< UAV altitude
  double h_ue_m = 1.5;   ///< user equipment height
  double bandwidth_hz = 10e6;

  void validate() const;
};

struct RateRow {
  double snr_threshold_db = 0.0;
  double throughput_bps = 0.0;  ///< delivered with the full spectrum
  friend bool operator==(const RateRow&, const RateRow&) = default;
};

/// Step function from SNR to full-spectrum throughput. A row applies from its
/// threshold (inclusive) up to the next threshold; the top row saturates.
class RateTable {
 public:
  RateTable() = default;
  /// Throws ConfigError unless thresholds strictly increase and throughputs
  /// never decrease.
  explicit RateTable(std::vector<RateRow> rows);

  /// 15 rows from -6 dB to 22 dB in 2 dB steps, spectral efficiency rising
  /// linearly from 0.15 to 5.55 bit/s/Hz, times `bandwidth_hz`.
  static RateTable default_table(double bandwidth_hz = 10e6);

  const std::vector<RateRow>& rows() const { return rows_; }
  double lookup(double snr_db) const;

  friend bool operator==(const RateTable&, const RateTable&) = default;

 private:
  std::vector<RateRow> rows_;
};

/// Full-spectrum downlink rate T(a,z) in bit/s, row-major by area.
class ThroughputMatrix {
 public:
  ThroughputMatrix() = default;
  ThroughputMatrix(int num_areas, int num_zones);

  int num_areas() const { return num_areas_; }
  int num_zones() const { return num_zones_; }
  double at(int area, int zone) const { return data_[index(area, zone)]; }
  double& at(int area, int zone) { return data_[index(area, zone)]; }

  friend bool operator==(const ThroughputMatrix&, const ThroughputMatrix&) = default;

 private:
  std::size_t index(int area, int zone) const {
    return static_cast<std::size_t>(area) * num_zones_ + zone;
  }
  int num_areas_ = 0;
  int num_zones_ = 0;
  std::vector<double> data_;
};

/// LOS micro-cell path loss:
/// 40 log10(d) + 7.8 - 18 log10(h_bs) - 18 log10(h_ue) + 2 log10(f).
/// Throws DomainError unless every argument is positive.
double path_loss_db(double d_m, double h_bs_m, double h_ue_m, double f_ghz);

inline double snr_db(double tx_dbm, double pl_db, double noise_dbm) {
  return tx_dbm - pl_db - noise_dbm;
}

double snr_to_throughput(double snr_db, const RateTable& table);

/// Slant range between a zone at UAV altitude and an area centroid at
/// user height.
double slant_distance_m(Point2 zone, Point2 area, const RadioConfig& cfg);

ThroughputMatrix build_throughput_matrix(const Scenario& s, const RadioConfig& cfg,
                                         const RateTable& table);

std::string throughput_to_csv(const ThroughputMatrix& t);
ThroughputMatrix throughput_from_csv(const std::string& text);
std::string rate_table_to_csv(const RateTable& table);
RateTable rate_table_from_csv(const std::string& text);

}  // namespace uavcov
