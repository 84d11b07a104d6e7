#pragma once

#include <optional>
#include <span>
#include <vector>

#include "oqho/structured_linalg.hpp"

namespace oqho {

/// Realization (A, B, C, D) of Gamma(s) = C (sI - A)^{-1} B + D.
///
/// Quantum systems carry 2n states and 2m channels, but intermediate blocks
/// (single rational entries, odd McMillan degree) need not be even, so
/// evenness is checked by the operations that require it rather than here.
/// A zero-state realization is a static gain Gamma(s) = D.
struct StateSpace {
  RealMatrix A;
  RealMatrix B;
  RealMatrix C;
  RealMatrix D;

  Index states() const { return A.rows(); }
  Index inputs() const { return B.cols(); }
  Index outputs() const { return C.rows(); }

  /// Throws DimensionError unless the four blocks have consistent shapes.
  void validate() const;

  static StateSpace static_gain(const RealMatrix& d);
};

/// Proper real rational function; coefficients in descending powers.
struct RationalEntry {
  std::vector<double> num;
  std::vector<double> den;
};

struct SpectrumReport {
  std::vector<Complex> poles;
  std::vector<Complex> zeros;
  bool mirror_symmetric = false;
  bool spectrally_generic = false;
  /// Largest distance between a zero and its paired mirrored pole.
  double max_pairing_distance = 0.0;
};

/// Numerical rank rule: sigma_i counts iff
/// sigma_i > max(relative * sigma_1, absolute).
/// relative defaults to max(rows, cols) * machine epsilon.
struct RankTolerance {
  std::optional<double> relative;
  double absolute = 0.0;
};

/// Distance below which two eigenvalues are paired in multiset comparisons.
inline constexpr double kSpectrumPairingTolerance = 1e-6;

/// Relative gap used by the near-pole guard of eval_tf.
inline constexpr double kNearPoleGuard = 1e-9;

ComplexMatrix eval_tf(const StateSpace& ss, Complex s);

/// Para-Hermitian conjugate Gamma~(s) = Gamma(-conj(s))^*.
ComplexMatrix eval_conjugate_tf(const StateSpace& ss, Complex s);

Index controllability_rank(const StateSpace& ss, RankTolerance tol = {});
Index observability_rank(const StateSpace& ss, RankTolerance tol = {});
bool is_minimal(const StateSpace& ss, RankTolerance tol = {});

/// Removes uncontrollable then unobservable dynamics with orthogonal
/// staircase reductions. `relative_tol` scales the rank cut-off by the
/// norm of the pencil blocks being reduced.
StateSpace minimal_realization(const StateSpace& ss, double relative_tol = 1e-11);

/// (A - B D^-1 C, B D^-1, -D^-1 C, D^-1). Throws SingularError if D is.
StateSpace inverse_realization(const StateSpace& ss);

/// (T A T^-1, T B, C T^-1, D).
StateSpace similarity_transform(const StateSpace& ss, const RealMatrix& t);

/// Eigenvalues of A, ordered by (real, imag).
std::vector<Complex> poles(const StateSpace& ss);

/// Eigenvalues of A - B D^-1 C, ordered by (real, imag). Requires
/// invertible D.
std::vector<Complex> transmission_zeros(const StateSpace& ss);

struct MultisetMatch {
  bool matched = false;
  double max_distance = 0.0;
};

/// Greedy nearest-neighbour pairing of two complex multisets.
MultisetMatch match_multisets(std::span<const Complex> a, std::span<const Complex> b,
                              double tol = kSpectrumPairingTolerance);

SpectrumReport spectrum_report(const StateSpace& ss,
                               double tol = kSpectrumPairingTolerance);

/// Controllable companion-form realization of a single proper rational entry.
StateSpace siso_realization(const RationalEntry& entry);

/// Direct sum of the blocks.
StateSpace block_diag(std::span<const StateSpace> blocks);

/// block_diag of the SISO realizations of each entry.
StateSpace realize_diagonal(std::span<const RationalEntry> entries);

namespace detail {

// Smallest singular value over the largest; 0 for an empty or zero matrix.
double inverse_condition(const RealMatrix& m);

// Throws SingularError if D is numerically singular.
void require_invertible_feedthrough(const RealMatrix& d, const char* what);

std::vector<Complex> sorted_eigenvalues(const RealMatrix& m);

// [B, AB, ..., A^{n-1} B].
RealMatrix krylov(const RealMatrix& a, const RealMatrix& b);

}  // namespace detail

}  // namespace oqho
