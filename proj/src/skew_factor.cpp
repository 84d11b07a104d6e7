#include "oqho/skew_factor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "oqho/errors.hpp"

namespace oqho {
namespace {

void require_factorable_shape(const RealMatrix& theta, const char* what) {
  detail::require_square(theta.rows(), theta.cols(), what);
  if (theta.rows() == 0) {
    throw DimensionError(std::string(what) + ": empty matrix");
  }
  detail::require_even(theta.rows(), what);
}

// Modified Gram-Schmidt in column order. Pairs stay pairs because the
// columns are already orthonormal up to roundoff.
void reorthonormalize(RealMatrix& o) {
  for (Index j = 0; j < o.cols(); ++j) {
    for (Index i = 0; i < j; ++i) {
      o.col(j) -= o.col(i).dot(o.col(j)) * o.col(i);
    }
    o.col(j).normalize();
  }
}

}  // namespace

RealMatrix murnaghan_blocks(const std::vector<double>& deltas) {
  const auto n = static_cast<Index>(deltas.size());
  RealMatrix lambda = RealMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    lambda(2 * k, 2 * k + 1) = deltas[static_cast<std::size_t>(k)];
    lambda(2 * k + 1, 2 * k) = -deltas[static_cast<std::size_t>(k)];
  }
  return lambda;
}

RealMatrix interleaving_permutation(Index n) {
  RealMatrix p = RealMatrix::Zero(2 * n, 2 * n);
  for (Index i = 0; i < n; ++i) {
    p(2 * i, i) = 1.0;
    p(2 * i + 1, n + i) = 1.0;
  }
  return p;
}

MurnaghanForm murnaghan(const RealMatrix& theta, StructureTolerance tol) {
  require_factorable_shape(theta, "murnaghan");
  const double skew_res = skew_residual(theta);
  if (!tol.accepts(skew_res, theta.norm())) {
    throw StructureError("murnaghan: matrix is not skew-symmetric (||T + T^T||_F = " +
                             std::to_string(skew_res) + ")",
                         skew_res);
  }
  const RealMatrix skew = 0.5 * (theta - theta.transpose());
  const Index dim = skew.rows();
  const Index n = dim / 2;

  const ComplexMatrix hermitian = Complex(0.0, 1.0) * skew.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian);
  if (es.info() != Eigen::Success) {
    throw Error("murnaghan: Hermitian eigensolver did not converge");
  }
  const auto& evals = es.eigenvalues();
  const double max_delta = evals(dim - 1);
  const double min_delta = evals(n);
  if (!(max_delta > 0.0) || min_delta <= kSkewSingularityRatio * max_delta) {
    throw SingularError("murnaghan: matrix is singular (smallest delta " +
                            std::to_string(min_delta) + ", largest " +
                            std::to_string(max_delta) + ")",
                        min_delta);
  }

  MurnaghanForm out;
  out.O.resize(dim, dim);
  for (Index k = 0; k < n; ++k) {
    const auto v = es.eigenvectors().col(dim - 1 - k);
    out.O.col(2 * k) = std::numbers::sqrt2 * v.imag();
    out.O.col(2 * k + 1) = std::numbers::sqrt2 * v.real();
  }
  reorthonormalize(out.O);

  const RealMatrix lambda = out.O.transpose() * skew * out.O;
  out.deltas.resize(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    out.deltas[static_cast<std::size_t>(k)] =
        0.5 * (lambda(2 * k, 2 * k + 1) - lambda(2 * k + 1, 2 * k));
  }
  out.residual = (out.O * murnaghan_blocks(out.deltas) * out.O.transpose() - theta).norm() /
                 theta.norm();
  return out;
}

SkewFactorization cholesky_like(const RealMatrix& theta, StructureTolerance tol) {
  MurnaghanForm form = murnaghan(theta, tol);
  const Index dim = theta.rows();
  const Index n = dim / 2;

  Eigen::VectorXd scale(dim);
  for (Index k = 0; k < n; ++k) {
    const double root = std::sqrt(form.deltas[static_cast<std::size_t>(k)]);
    scale(2 * k) = root;
    scale(2 * k + 1) = root;
  }
  SkewFactorization out;
  out.Sigma = form.O * scale.asDiagonal() * interleaving_permutation(n);
  out.O = std::move(form.O);
  out.deltas = std::move(form.deltas);
  out.residual =
      (out.Sigma * detail::symplectic_form(dim) * out.Sigma.transpose() - theta).norm() /
      theta.norm();
  Eigen::JacobiSVD<RealMatrix> svd(out.Sigma);
  const auto& sv = svd.singularValues();
  out.condition = sv(0) / sv(sv.size() - 1);
  return out;
}

RealMatrix relate_ccr(const RealMatrix& theta1, const RealMatrix& theta2,
                      StructureTolerance tol) {
  if (theta1.rows() != theta2.rows() || theta1.cols() != theta2.cols()) {
    throw DimensionError("relate_ccr: CCR matrices have different shapes");
  }
  const SkewFactorization f1 = cholesky_like(theta1, tol);
  const SkewFactorization f2 = cholesky_like(theta2, tol);
  // Sigma_1 Sigma_2^{-1} = (Sigma_2^{-T} Sigma_1^T)^T
  return f2.Sigma.transpose().fullPivLu().solve(f1.Sigma.transpose()).transpose();
}

}  // namespace oqho
