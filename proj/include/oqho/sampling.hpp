#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oqho/state_space.hpp"

namespace oqho {

/// Placement of pseudo-random complex frequencies for identity checks.
/// |s| is log-uniform in [min_radius, max_radius], arg(s) uniform over the
/// full circle, and any point within pole_clearance of an eigenvalue of A or
/// of -A^T is redrawn.
struct SampleOptions {
  int count = 20;
  std::uint64_t seed = 42;
  double min_radius = 1e-2;
  double max_radius = 1e2;
  double pole_clearance = 1e-6;
  int max_draws_per_point = 1000;
};

/// Returns nullopt when the clearance rule rejects every draw for some point.
std::optional<std::vector<Complex>> sample_points(std::span<const Complex> forbidden,
                                                  const SampleOptions& options);

/// Samples avoiding the poles of Gamma and Gamma~ for every system given.
std::optional<std::vector<Complex>> sample_points(std::span<const StateSpace> systems,
                                                  const SampleOptions& options);

}  // namespace oqho
