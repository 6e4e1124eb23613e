#pragma once

#include <vector>

namespace odyn {

// Per-node filtering thresholds t_i in {0, ..., n-1}: how many highest-above
// and lowest-below neighbor opinions node i discards each step.
struct ThresholdAssignment {
  std::vector<int> t;

  static ThresholdAssignment uniform(int n, int value);

  int size() const noexcept { return static_cast<int>(t.size()); }

  // Enforces length == n and 0 <= t_i <= n-1.
  void validate_for(int n) const;
};

}  // namespace odyn
