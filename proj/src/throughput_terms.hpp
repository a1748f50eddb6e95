#pragma once

// Rows shared by the full planning model and the fixed-plan allocation LP:
// per-user throughput mu(a,k) and the epigraph of the max-min rolling average.

#include <cstdint>
#include <vector>

#include "uavcov/lp.hpp"
#include "uavcov/optimizer.hpp"

namespace uavcov::detail {

struct PhiColumn {
  int col = 0;
  int area = 0;
  int uav = 0;
  int step = 0;
  int zone = 0;
};

struct ThroughputTerms {
  std::vector<int> mu_col;  ///< [a*K + k], -1 when excluded
  int t_col = -1;
  int throughput_rows = 0;
  int objective_rows = 0;
  std::vector<double> tiebreak;  ///< full-length cost vector, empty for TieBreak::None
};

/// `scaled_t` is T / scale, area-major; `n` is area-major.
ThroughputTerms add_throughput_objective(lp::LinearProgram& lp, const std::vector<PhiColumn>& phis,
                                         const std::vector<double>& scaled_t,
                                         const std::vector<std::int64_t>& n, int num_areas,
                                         int num_steps, int num_zones,
                                         const PlanningOptions& options);

/// Largest entry of T, or 1 when T is all zero.
double throughput_scale(const ThroughputMatrix& t);

/// Flattened copies with dimension checks against the scenario.
std::vector<double> flatten(const ThroughputMatrix& t, const Scenario& s);
std::vector<std::int64_t> flatten(const VehicleCounts& n, const Scenario& s);

}  // namespace uavcov::detail
