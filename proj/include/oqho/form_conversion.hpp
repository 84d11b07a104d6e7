#pragma once

#include <vector>

#include "oqho/condition.hpp"
#include "oqho/state_space.hpp"
#include "oqho/structured_linalg.hpp"

namespace oqho {

/// Position-momentum parameterization of an n-mode, m-channel oscillator.
///   D: 2m x 2m orthosymplectic feedthrough
///   M: 2m x 2n system-field coupling
///   R: 2n x 2n symmetric Hamiltonian matrix
///   Theta: 2n x 2n nonsingular skew CCR matrix
struct PmParams {
  RealMatrix D;
  RealMatrix M;
  RealMatrix R;
  RealMatrix Theta;

  Index modes() const { return R.rows() / 2; }
  Index channels() const { return D.rows() / 2; }
};

/// Annihilation-creation parameterization. S is m x m unitary, N1/N2 are
/// m x n, H1/H2 and E1/E2 are n x n. The doubled-up matrices are
/// N = Delta(N1, N2), H = Delta(H1, H2) (Hermitian) and E = Delta(E1, E2)
/// (nonsingular, defining the generalized CCR matrix E bold-J E^*).
struct AcParams {
  ComplexMatrix S;
  ComplexMatrix N1;
  ComplexMatrix N2;
  ComplexMatrix H1;
  ComplexMatrix H2;
  ComplexMatrix E1;
  ComplexMatrix E2;

  Index modes() const { return H1.rows(); }
  Index channels() const { return S.rows(); }
};

/// Doubled-up (F, G, L, K) realization in annihilation-creation variables.
struct ComplexStateSpace {
  ComplexMatrix F;
  ComplexMatrix G;
  ComplexMatrix L;
  ComplexMatrix K;
};

/// Ito matrix I_{2m} + i J_{2m}.
ComplexMatrix ito_matrix(Index m);

/// Per-invariant residuals of a parameter set (shapes are checked first and
/// throw DimensionError).
std::vector<Condition> pm_conditions(const PmParams& p, StructureTolerance tol = {});
std::vector<Condition> ac_conditions(const AcParams& a, StructureTolerance tol = {});

/// Returns the parameters with R symmetrized (resp. H1 Hermitized and H2
/// symmetrized); throws StructureError listing every violated invariant.
PmParams validated(const PmParams& p, StructureTolerance tol = {});
AcParams validated(const AcParams& a, StructureTolerance tol = {});

/// E bold-J E^* for E = Delta(E1, E2).
ComplexMatrix generalized_ccr(const AcParams& a);

/// A = 2 Theta R - B J B^T Theta^-1 / 2, B = 2 Theta M^T, C = -D J B^T Theta^-1.
StateSpace build_pm_realization(const PmParams& p, StructureTolerance tol = {});

/// Same formulas without checking the parameter invariants; used to build
/// deliberately non-physical systems. Theta must still be invertible.
StateSpace assemble_pm_realization(const PmParams& p);

/// F = -i Th H - Th N^* bJ N / 2, G = -Th N^* bJ Delta(S, 0), L = N,
/// K = Delta(S, 0) with Th the generalized CCR matrix.
ComplexStateSpace build_ac_realization(const AcParams& a, StructureTolerance tol = {});

ComplexMatrix eval_tf(const ComplexStateSpace& ss, Complex s);

PmParams ac_to_pm(const AcParams& a, StructureTolerance tol = {});

/// E is taken from the Cholesky-like factorization Theta = E J E^T.
AcParams pm_to_ac(const PmParams& p, StructureTolerance tol = {});

/// Largest normalized residual between the real realization of `p` and the
/// T-conjugated complex realization of pm_to_ac(p):
///   A = T F T^* / 2, B = T G T^* / 2, C = T L T^* / 2, D = T K T^* / 2.
double pm_to_ac_realization_consistency(const PmParams& p);

}  // namespace oqho
