#include "uavcov/lp.hpp"

#include <Highs.h>

#include <cmath>

#include "uavcov/error.hpp"

namespace uavcov::lp {

int LinearProgram::add_column(double lower, double upper, double cost) {
  col_lower_.push_back(lower);
  col_upper_.push_back(upper);
  col_cost_.push_back(cost);
  return num_columns() - 1;
}

int LinearProgram::add_row(double lower, double upper, std::span<const int> cols,
                           std::span<const double> vals) {
  if (cols.size() != vals.size()) throw ModelError("row index/value length mismatch");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] < 0 || cols[i] >= num_columns()) throw ModelError("row references unknown column");
    index_.push_back(cols[i]);
    value_.push_back(vals[i]);
  }
  start_.push_back(static_cast<int>(index_.size()));
  row_lower_.push_back(lower);
  row_upper_.push_back(upper);
  return num_rows() - 1;
}

struct Backend {
  static HighsStatus pass(Highs& h, const LinearProgram& lp) {
    HighsLp model;
    model.num_col_ = lp.num_columns();
    model.num_row_ = lp.num_rows();
    model.sense_ = ObjSense::kMaximize;
    model.col_cost_ = lp.col_cost_;
    model.col_lower_ = lp.col_lower_;
    model.col_upper_ = lp.col_upper_;
    model.row_lower_ = lp.row_lower_;
    model.row_upper_ = lp.row_upper_;
    model.a_matrix_.format_ = MatrixFormat::kRowwise;
    model.a_matrix_.num_col_ = model.num_col_;
    model.a_matrix_.num_row_ = model.num_row_;
    model.a_matrix_.start_.assign(lp.start_.begin(), lp.start_.end());
    model.a_matrix_.index_.assign(lp.index_.begin(), lp.index_.end());
    model.a_matrix_.value_ = lp.value_;
    return h.passModel(std::move(model));
  }
};

namespace {

Status classify(HighsModelStatus s) {
  switch (s) {
    case HighsModelStatus::kOptimal: return Status::Optimal;
    case HighsModelStatus::kInfeasible: return Status::Infeasible;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible: return Status::Unbounded;
    default: return Status::Failed;
  }
}

}  // namespace

Result solve(const LinearProgram& lp, const Options& options) {
  Result result;
  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("solver", "simplex");
  // Primal simplex is several times faster than dual on the planning LPs.
  highs.setOptionValue("simplex_strategy", kSimplexStrategyPrimal);
  highs.setOptionValue("primal_feasibility_tolerance", options.feasibility_tolerance);
  highs.setOptionValue("dual_feasibility_tolerance", options.feasibility_tolerance);
  if (Backend::pass(highs, lp) == HighsStatus::kError) {
    result.detail = "model rejected by LP backend";
    return result;
  }
  highs.run();
  result.status = classify(highs.getModelStatus());
  result.detail = highs.modelStatusToString(highs.getModelStatus());
  if (result.status != Status::Optimal) return result;
  result.objective = highs.getInfo().objective_function_value;
  result.x = highs.getSolution().col_value;

  if (options.tiebreak_cost) {
    const auto& second = *options.tiebreak_cost;
    if (static_cast<int>(second.size()) != lp.num_columns())
      throw ModelError("tie-break cost vector has the wrong length");
    // Pin the primary objective as a row, then re-solve from the current basis.
    std::vector<HighsInt> idx;
    std::vector<double> val;
    for (int c = 0; c < lp.num_columns(); ++c) {
      if (lp.costs()[c] != 0.0) {
        idx.push_back(c);
        val.push_back(lp.costs()[c]);
      }
    }
    const double floor =
        result.objective - options.tiebreak_slack * std::max(1.0, std::abs(result.objective));
    highs.addRow(floor, kInf, static_cast<HighsInt>(idx.size()), idx.data(), val.data());
    highs.changeColsCost(0, lp.num_columns() - 1, second.data());
    // The added row leaves the basis primal infeasible but dual feasible.
    highs.setOptionValue("simplex_strategy", kSimplexStrategyDual);
    highs.run();
    if (classify(highs.getModelStatus()) == Status::Optimal) {
      result.x = highs.getSolution().col_value;
      double primary = 0.0;
      for (std::size_t i = 0; i < idx.size(); ++i) primary += val[i] * result.x[idx[i]];
      result.objective = primary;
    } else {
      result.detail += "; tie-break phase: " + highs.modelStatusToString(highs.getModelStatus());
    }
  }
  return result;
}

}  // namespace uavcov::lp
