#include "odyn/thresholds.hpp"

#include <string>

#include "odyn/error.hpp"

namespace odyn {

ThresholdAssignment ThresholdAssignment::uniform(int n, int value) {
  if (n < 0) {
    fail(ErrorCode::InvalidArgument, "node count must be nonnegative");
  }
  ThresholdAssignment out;
  out.t.assign(static_cast<std::size_t>(n), value);
  out.validate_for(n);
  return out;
}

void ThresholdAssignment::validate_for(int n) const {
  if (size() != n) {
    fail(ErrorCode::InvalidArgument,
         "threshold count " + std::to_string(size()) +
             " does not match node count " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (t[i] < 0 || t[i] > n - 1) {
      fail(ErrorCode::InvalidArgument,
           "threshold t_" + std::to_string(i) + " = " + std::to_string(t[i]) +
               " outside [0, " + std::to_string(n - 1) + "]");
    }
  }
}

}  // namespace odyn
