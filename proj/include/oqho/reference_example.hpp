#pragma once

#include <vector>

#include "oqho/form_conversion.hpp"
#include "oqho/state_space.hpp"

// Two-mode, two-channel oscillator with
//   Gamma(s) = diag((s+1)/s, (s-1)/(s+1), s/(s-1), (s-1)/(s+1)),
// whose poles 0 and 1 / -1 make it impossible to realize with no pole pair
// symmetric about the imaginary axis.
namespace oqho::reference_example {

std::vector<RationalEntry> transfer_entries();

/// Parameters for Theta = J_4: D = I, R with R(0,2) = R(2,0) = 1/4 and
///   M = [-1/2 0 0 0; 0 0 0 1; 0 0 1/2 0; 0 -1/2 0 0].
/// M(2,2) (zero-based) must be 1/2; with 1/4 the realization no longer
/// matches Gamma (see literal_m22_params).
PmParams pm_params();

/// Same as pm_params but with M(2,2) = 1/4.
PmParams literal_m22_params();

/// Doubled-up annihilation-creation data: S = I, and
///   H = Delta(0, diag(i/2, 0)),
///   N = [0 0 i 0; 0 -3/2 0 1/2; -i 0 0 0; 0 1/2 0 -3/2].
ComplexMatrix s_matrix();
ComplexMatrix h_doubled();
ComplexMatrix n_doubled();

/// In the order (0, -1, -1, 1) and (0, 1, 1, -1).
std::vector<Complex> poles();
std::vector<Complex> zeros();

}  // namespace oqho::reference_example
