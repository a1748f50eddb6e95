#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace uavcov::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Row-wise sparse linear program, maximized.
class LinearProgram {
 public:
  int add_column(double lower, double upper, double cost = 0.0);
  int add_row(double lower, double upper, std::span<const int> cols, std::span<const double> vals);

  int num_columns() const { return static_cast<int>(col_cost_.size()); }
  int num_rows() const { return static_cast<int>(row_lower_.size()); }
  std::size_t num_nonzeros() const { return index_.size(); }

  const std::vector<double>& costs() const { return col_cost_; }
  void set_cost(int col, double cost) { col_cost_[col] = cost; }

 private:
  friend struct Backend;
  std::vector<double> col_cost_, col_lower_, col_upper_;
  std::vector<double> row_lower_, row_upper_;
  std::vector<int> start_{0}, index_;
  std::vector<double> value_;
};

enum class Status { Optimal, Infeasible, Unbounded, Failed };

struct Options {
  double feasibility_tolerance = 1e-9;
  /// Optional second objective: once the primary optimum z* is known, the
  /// solver keeps primary >= z* - tiebreak_slack * max(1, |z*|) and maximizes
  /// this cost vector instead. The reported objective is the primary one.
  std::optional<std::vector<double>> tiebreak_cost;
  double tiebreak_slack = 1e-9;
};

struct Result {
  Status status = Status::Failed;
  double objective = 0.0;  ///< primary objective at the returned point
  std::vector<double> x;
  std::string detail;
};

/// Solves with HiGHS (simplex, single thread, no console output).
/// Each call owns its solver instance.
Result solve(const LinearProgram& lp, const Options& options = {});

}  // namespace uavcov::lp
