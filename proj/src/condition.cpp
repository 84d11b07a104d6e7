#include "oqho/condition.hpp"

#include <sstream>

namespace oqho {

int dominant_failure(const std::vector<Condition>& conditions) {
  int best = -1;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    const Condition& c = conditions[i];
    if (c.passed) continue;
    const double ratio = c.threshold > 0.0 ? c.residual / c.threshold : c.residual;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::string describe_failures(const std::vector<Condition>& conditions) {
  std::ostringstream out;
  bool first = true;
  for (const Condition& c : conditions) {
    if (c.passed) continue;
    if (!first) out << "; ";
    out << c.name << " (residual " << c.residual << ", threshold " << c.threshold << ")";
    first = false;
  }
  return out.str();
}

}  // namespace oqho
