#include "oqho/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace oqho {

std::optional<std::vector<Complex>> sample_points(std::span<const Complex> forbidden,
                                                  const SampleOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> log_radius(std::log(options.min_radius),
                                                    std::log(options.max_radius));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  std::vector<Complex> points;
  points.reserve(static_cast<std::size_t>(std::max(options.count, 0)));
  for (int k = 0; k < options.count; ++k) {
    bool placed = false;
    for (int draw = 0; draw < options.max_draws_per_point && !placed; ++draw) {
      const Complex s = std::polar(std::exp(log_radius(rng)), angle(rng));
      placed = true;
      for (const Complex& f : forbidden) {
        if (std::abs(s - f) < options.pole_clearance) {
          placed = false;
          break;
        }
      }
      if (placed) points.push_back(s);
    }
    if (!placed) return std::nullopt;
  }
  return points;
}

std::optional<std::vector<Complex>> sample_points(std::span<const StateSpace> systems,
                                                  const SampleOptions& options) {
  std::vector<Complex> forbidden;
  for (const StateSpace& ss : systems) {
    for (const Complex& p : poles(ss)) {
      forbidden.push_back(p);
      forbidden.push_back(-p);
    }
  }
  return sample_points(forbidden, options);
}

}  // namespace oqho
