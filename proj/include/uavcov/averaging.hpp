#pragma once

#include <algorithm>

namespace uavcov {

/// How the rolling per-user throughput is normalized.
enum class WindowRule {
  Truncated,  ///< divide by the number of steps actually in the window
  Literal,    ///< divide by H even though the window spans H + 1 steps
};

struct Averaging {
  int horizon = 30;  ///< H: the window closing at step k spans k-H .. k
  WindowRule rule = WindowRule::Truncated;
};

inline int window_begin(int step, const Averaging& avg) { return std::max(0, step - avg.horizon); }

inline double window_divisor(int step, const Averaging& avg) {
  if (avg.rule == WindowRule::Literal) return avg.horizon;
  return step - window_begin(step, avg) + 1;
}

}  // namespace uavcov
