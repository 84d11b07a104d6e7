#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oqho/condition.hpp"
#include "oqho/form_conversion.hpp"
#include "oqho/sampling.hpp"
#include "oqho/state_space.hpp"

namespace oqho {

enum class Verdict { kRealizable, kNotRealizable, kInconclusive };

/// "PR", "not-PR", "inconclusive".
std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

inline constexpr double kDefaultCheckTolerance = 1e-8;
inline constexpr double kDefaultRebuildTolerance = 1e-7;

struct PrReport {
  /// "frequency" or "time_domain".
  std::string check;
  Verdict verdict = Verdict::kInconclusive;
  double tolerance = kDefaultCheckTolerance;
  double d_orthogonality_residual = 0.0;
  double d_symplectic_residual = 0.0;
  double jj_unitarity_max_residual = 0.0;
  std::vector<Complex> sample_points;
  std::vector<Condition> conditions;
  /// Name of the failing condition with the largest residual, empty on PR.
  std::string dominant_condition;
  std::string failure_reason;
};

struct JjUnitarityResult {
  /// False when sample points could not be placed away from the poles.
  bool placed = false;
  bool unitary = false;
  /// max_i ||G~(s_i) J G(s_i) - J||_F / max(1, ||G~(s_i)||_F ||G(s_i)||_F)
  double max_residual = 0.0;
  /// Same for the dual form G(s) J G~(s) = J.
  double max_dual_residual = 0.0;
  std::vector<Complex> points;
};

/// Samples the (J, J)-unitarity identity and its dual at pseudo-random
/// frequencies away from the poles of Gamma and Gamma~.
JjUnitarityResult check_jj_unitary(const StateSpace& ss, const SampleOptions& samples,
                                   double tol = kDefaultCheckTolerance);

/// Frequency-domain realizability test: PR iff Gamma is (J, J)-unitary at
/// every sample and D is orthogonal. Symplecticity of D is reported but not
/// gated on, since it follows from the unitarity identity.
PrReport check_pr_frequency(const StateSpace& ss, double tol = kDefaultCheckTolerance,
                            const SampleOptions& samples = {});

/// Time-domain test against a given CCR matrix Theta. Conditions:
///   d_orthosymplectic     D^T D = I and D^T J D = J
///   ccr_preservation      A Theta + Theta A^T + B J B^T = 0
///   output_coupling       C = -D J B^T Theta^-1
///   hamiltonian_symmetry  R = Theta^-1 (A + B J B^T Theta^-1 / 2) / 2 is symmetric
/// The last one is equivalent to ccr_preservation and only decides the
/// dominant condition when the first three pass.
PrReport check_pr_time_domain(const StateSpace& ss, const RealMatrix& theta,
                              double tol = kDefaultCheckTolerance);

struct FSolution {
  /// Exactly skew (antisymmetrized).
  RealMatrix F;
  /// ||F + F^T||_F / ||F||_F before antisymmetrization.
  double raw_asymmetry = 0.0;
  std::vector<Condition> equation_residuals;
};

/// Solves for the similarity F between the realization of Gamma^-1 and of
/// -J Gamma~ J:
///   J B^T F = -D^-1 C,  C^T J = F B D^-1,  A^T F + F (A - B D^-1 C) = 0
/// as one stacked least-squares problem in the entries of F.
/// Requires a minimal realization with invertible D; throws
/// NotRealizableError when the equations have no (unique) solution.
FSolution compute_f(const StateSpace& ss, double tol = kDefaultCheckTolerance);

/// Independent route to F from the controllability matrices of the two
/// realizations: F K_1 = K_2. Used to cross-check compute_f.
RealMatrix compute_f_via_controllability(const StateSpace& ss);

struct SynthesisOptions {
  double check_tolerance = kDefaultCheckTolerance;
  double rebuild_tolerance = kDefaultRebuildTolerance;
  SampleOptions samples;
};

struct SynthesisResult {
  RealMatrix F;
  RealMatrix Rhat;
  RealMatrix Sigma;
  PmParams params;
  std::vector<Condition> equation_residuals;
  double f_raw_asymmetry = 0.0;
  /// ||Rhat - Rhat^T||_F / ||Rhat||_F before symmetrization.
  double rhat_raw_asymmetry = 0.0;
  /// Max relative transfer-function mismatch of the rebuilt realization.
  double rebuild_residual = 0.0;
  Index original_states = 0;
  Index minimal_states = 0;
  PrReport frequency_report;
  PrReport rebuilt_time_domain_report;
};

/// Constructs (D, M, R) for the given CCR matrix from any realization of a
/// physically realizable Gamma. Non-minimal inputs are reduced first.
///
/// Steps: F from compute_f; Rhat = F (A F^-1 + B J B^T / 2) F / 2;
/// Sigma with F^-1 = Sigma Theta Sigma^T; then
///   M = -B^T Sigma^-T Theta^-1 / 2,  R = Sigma^T Rhat Sigma.
/// The rebuilt realization is checked against the input at sample points and
/// by check_pr_time_domain before returning.
SynthesisResult synthesize(const StateSpace& ss, const RealMatrix& theta_target,
                           const SynthesisOptions& options = {});

/// Zeros are the mirror image of the poles about the imaginary axis.
bool pr_zero_pole_mirror(const StateSpace& ss);

/// Largest relative mismatch max ||G1(s) - G2(s)|| / max(1, ||G1(s)||) over
/// the points.
double transfer_mismatch(const StateSpace& first, const StateSpace& second,
                         std::span<const Complex> points);

}  // namespace oqho
