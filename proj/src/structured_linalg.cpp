#include "oqho/structured_linalg.hpp"

#include <string>

#include "oqho/errors.hpp"

namespace oqho {
namespace detail {

void require_square(Index rows, Index cols, const char* what) {
  if (rows != cols) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_even(Index r, const char* what) {
  if (r % 2 != 0) {
    throw DimensionError(std::string(what) + ": dimension " +
                         std::to_string(r) + " is not even");
  }
}

RealMatrix symplectic_form(Index r) {
  require_even(r, "symplectic_form");
  const Index h = r / 2;
  RealMatrix j = RealMatrix::Zero(r, r);
  j.topRightCorner(h, h).setIdentity();
  j.bottomLeftCorner(h, h) = -RealMatrix::Identity(h, h);
  return j;
}

}  // namespace detail

RealMatrix j_matrix(Index r) {
  if (r < 2) {
    throw DimensionError("j_matrix: order must be even and at least 2, got " +
                         std::to_string(r));
  }
  return detail::symplectic_form(r);
}

RealMatrix bold_j_matrix(Index r) {
  detail::require_even(r, "bold_j_matrix");
  RealMatrix j = RealMatrix::Identity(r, r);
  j.bottomRightCorner(r / 2, r / 2) *= -1.0;
  return j;
}

ComplexMatrix t_matrix(Index k) {
  detail::require_even(k, "t_matrix");
  const Index h = k / 2;
  const Complex i(0.0, 1.0);
  ComplexMatrix t = ComplexMatrix::Zero(k, k);
  for (Index j = 0; j < h; ++j) {
    t(j, j) = 1.0;
    t(j, h + j) = 1.0;
    t(h + j, j) = -i;
    t(h + j, h + j) = i;
  }
  return t;
}

ComplexMatrix doubled_up(const ComplexMatrix& x1, const ComplexMatrix& x2) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw DimensionError("doubled_up: block shapes differ");
  }
  const Index r = x1.rows();
  const Index c = x1.cols();
  ComplexMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = x1;
  out.topRightCorner(r, c) = x2;
  out.bottomLeftCorner(r, c) = x2.conjugate();
  out.bottomRightCorner(r, c) = x1.conjugate();
  return out;
}

RealMatrix nabla(const ComplexMatrix& x1, const ComplexMatrix& x2) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw DimensionError("nabla: block shapes differ");
  }
  const Index r = x1.rows();
  const Index c = x1.cols();
  const ComplexMatrix sum = x1 + x2;
  const ComplexMatrix diff = x1 - x2;
  RealMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = sum.real();
  out.topRightCorner(r, c) = -diff.imag();
  out.bottomLeftCorner(r, c) = sum.imag();
  out.bottomRightCorner(r, c) = diff.real();
  return out;
}

BoldBlocks extract_bold_blocks(const RealMatrix& x) {
  detail::require_even(x.rows(), "extract_bold_blocks (rows)");
  detail::require_even(x.cols(), "extract_bold_blocks (cols)");
  const Index r = x.rows() / 2;
  const Index c = x.cols() / 2;
  const RealMatrix x11 = x.topLeftCorner(r, c);
  const RealMatrix x12 = x.topRightCorner(r, c);
  const RealMatrix x21 = x.bottomLeftCorner(r, c);
  const RealMatrix x22 = x.bottomRightCorner(r, c);
  const Complex half_i(0.0, 0.5);
  BoldBlocks out;
  out.first = 0.5 * (x11 + x22).cast<Complex>() + half_i * (x21 - x12).cast<Complex>();
  out.second = 0.5 * (x11 - x22).cast<Complex>() + half_i * (x21 + x12).cast<Complex>();
  return out;
}

double orthogonality_residual(const RealMatrix& m) {
  detail::require_square(m.rows(), m.cols(), "orthogonality_residual");
  return (m.transpose() * m - RealMatrix::Identity(m.rows(), m.cols())).norm();
}

double symplectic_residual(const RealMatrix& m) {
  detail::require_square(m.rows(), m.cols(), "symplectic_residual");
  const RealMatrix j = detail::symplectic_form(m.rows());
  return (m.transpose() * j * m - j).norm();
}

double skew_residual(const RealMatrix& m) {
  detail::require_square(m.rows(), m.cols(), "skew_residual");
  return (m + m.transpose()).norm();
}

double symmetry_residual(const RealMatrix& m) {
  detail::require_square(m.rows(), m.cols(), "symmetry_residual");
  return (m - m.transpose()).norm();
}

double hermitian_residual(const ComplexMatrix& m) {
  detail::require_square(m.rows(), m.cols(), "hermitian_residual");
  return (m - m.adjoint()).norm();
}

double unitarity_residual(const ComplexMatrix& m) {
  detail::require_square(m.rows(), m.cols(), "unitarity_residual");
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

bool is_orthogonal(const RealMatrix& m, StructureTolerance tol) {
  return tol.accepts(orthogonality_residual(m), m.norm());
}

bool is_symplectic(const RealMatrix& m, StructureTolerance tol) {
  return tol.accepts(symplectic_residual(m), m.norm());
}

bool is_orthosymplectic(const RealMatrix& m, StructureTolerance tol) {
  return is_orthogonal(m, tol) && is_symplectic(m, tol);
}

bool is_skew_symmetric(const RealMatrix& m, StructureTolerance tol) {
  return tol.accepts(skew_residual(m), m.norm());
}

bool is_symmetric(const RealMatrix& m, StructureTolerance tol) {
  return tol.accepts(symmetry_residual(m), m.norm());
}

bool is_hermitian(const ComplexMatrix& m, StructureTolerance tol) {
  return tol.accepts(hermitian_residual(m), m.norm());
}

bool is_unitary(const ComplexMatrix& m, StructureTolerance tol) {
  return tol.accepts(unitarity_residual(m), m.norm());
}

}  // namespace oqho
