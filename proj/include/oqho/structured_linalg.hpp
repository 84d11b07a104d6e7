#pragma once

#include <complex>

#include <Eigen/Core>

namespace oqho {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Residual acceptance rule shared by every structural predicate: a residual
/// passes iff residual <= absolute + relative * ||input||_F.
struct StructureTolerance {
  double absolute = 1e-10;
  double relative = 1e-8;

  bool accepts(double residual, double input_norm) const {
    return residual <= absolute + relative * input_norm;
  }
};

/// J_r = [[0, I], [-I, 0]] with r/2 sized blocks. Requires r even and >= 2.
RealMatrix j_matrix(Index r);

/// Signature matrix diag(I_{r/2}, -I_{r/2}). Requires r even; r = 0 gives an
/// empty matrix.
RealMatrix bold_j_matrix(Index r);

/// T_k = [[1, 1], [-i, i]] (x) I_{k/2}, the quadrature change of basis.
ComplexMatrix t_matrix(Index k);

/// Doubled-up matrix [[X1, X2], [conj(X2), conj(X1)]].
ComplexMatrix doubled_up(const ComplexMatrix& x1, const ComplexMatrix& x2);

/// Real image of the doubled-up pair under T conjugation:
///   [[Re(X1+X2), -Im(X1-X2)], [Im(X1+X2), Re(X1-X2)]]
/// which equals (1/2) T Delta(X1, X2) T^*.
RealMatrix nabla(const ComplexMatrix& x1, const ComplexMatrix& x2);

struct BoldBlocks {
  ComplexMatrix first;
  ComplexMatrix second;
};

/// Inverse of nabla. Splits a real 2j x 2k matrix into j x k blocks X11..X22
/// and returns
///   first  = (X11 + X22)/2 + i (X21 - X12)/2,
///   second = (X11 - X22)/2 + i (X21 + X12)/2.
BoldBlocks extract_bold_blocks(const RealMatrix& x);

// Frobenius residuals behind the predicates below.
double orthogonality_residual(const RealMatrix& m);
double symplectic_residual(const RealMatrix& m);
double skew_residual(const RealMatrix& m);
double symmetry_residual(const RealMatrix& m);
double hermitian_residual(const ComplexMatrix& m);
double unitarity_residual(const ComplexMatrix& m);

bool is_orthogonal(const RealMatrix& m, StructureTolerance tol = {});
bool is_symplectic(const RealMatrix& m, StructureTolerance tol = {});
bool is_orthosymplectic(const RealMatrix& m, StructureTolerance tol = {});
bool is_skew_symmetric(const RealMatrix& m, StructureTolerance tol = {});
bool is_symmetric(const RealMatrix& m, StructureTolerance tol = {});
bool is_hermitian(const ComplexMatrix& m, StructureTolerance tol = {});
bool is_unitary(const ComplexMatrix& m, StructureTolerance tol = {});

namespace detail {

// J_r that also accepts r = 0, for zero-mode systems.
RealMatrix symplectic_form(Index r);

void require_square(Index rows, Index cols, const char* what);
void require_even(Index r, const char* what);

}  // namespace detail

}  // namespace oqho
