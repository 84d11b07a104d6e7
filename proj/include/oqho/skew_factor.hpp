#pragma once

#include <vector>

#include "oqho/structured_linalg.hpp"

namespace oqho {

/// Theta = O * blockdiag([0 d_i; -d_i 0]) * O^T with O orthogonal.
struct MurnaghanForm {
  RealMatrix O;
  /// Positive, descending.
  std::vector<double> deltas;
  /// ||O Lambda O^T - Theta||_F / ||Theta||_F.
  double residual = 0.0;
};

/// Theta = Sigma J Sigma^T.
struct SkewFactorization {
  RealMatrix Sigma;
  RealMatrix O;
  std::vector<double> deltas;
  /// ||Sigma J Sigma^T - Theta||_F / ||Theta||_F.
  double residual = 0.0;
  /// 2-norm condition number of Sigma.
  double condition = 0.0;
};

/// min delta must exceed this fraction of max delta.
inline constexpr double kSkewSingularityRatio = 1e-12;

/// Block-diagonal [0 d_i; -d_i 0] matrix for the given parameters.
RealMatrix murnaghan_blocks(const std::vector<double>& deltas);

/// The permutation Sigma_0 with Sigma_0 J Sigma_0^T = I_n (x) [0 1; -1 0].
RealMatrix interleaving_permutation(Index n);

/// Orthogonal canonical form of a nonsingular skew-symmetric matrix.
///
/// Works from the Hermitian eigendecomposition of i*Theta: each eigenpair
/// (delta, x + iy) with delta > 0 yields the real orthonormal pair
/// sqrt(2) * (y, x) spanning one 2x2 block. Pairs are re-orthonormalized in
/// order, then deltas are re-read from O^T Theta O.
///
/// Throws StructureError if Theta is not skew within `tol`, DimensionError for
/// odd or empty input, and SingularError if min delta <= 1e-12 * max delta.
MurnaghanForm murnaghan(const RealMatrix& theta, StructureTolerance tol = {});

/// Cholesky-like factor Sigma = O diag(sqrt(d_1), sqrt(d_1), ...) Sigma_0.
SkewFactorization cholesky_like(const RealMatrix& theta, StructureTolerance tol = {});

/// Sigma_hat with Sigma_hat Theta2 Sigma_hat^T = Theta1, built as
/// Sigma_1 Sigma_2^-1 from the two factorizations.
RealMatrix relate_ccr(const RealMatrix& theta1, const RealMatrix& theta2,
                      StructureTolerance tol = {});

}  // namespace oqho
