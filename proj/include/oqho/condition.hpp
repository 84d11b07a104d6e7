#pragma once

#include <string>
#include <vector>

namespace oqho {

/// One named check in a report. For identity checks `residual` is a
/// (normalized) Frobenius residual that passes when <= threshold; for
/// nonsingularity checks it is an inverse condition number that passes when
/// > threshold.
struct Condition {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Index of the failing condition with the largest residual/threshold ratio,
/// or -1 when everything passed.
int dominant_failure(const std::vector<Condition>& conditions);

/// "name (residual r)" for every failing condition, joined with "; ".
std::string describe_failures(const std::vector<Condition>& conditions);

}  // namespace oqho
