#include "oqho/form_conversion.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "oqho/errors.hpp"
#include "oqho/skew_factor.hpp"

namespace oqho {
namespace {

constexpr double kNonsingularThreshold = 1e-12;

std::string shape(const RealMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_pm_shapes(const PmParams& p) {
  detail::require_square(p.D.rows(), p.D.cols(), "PmParams.D");
  detail::require_even(p.D.rows(), "PmParams.D");
  detail::require_square(p.R.rows(), p.R.cols(), "PmParams.R");
  detail::require_even(p.R.rows(), "PmParams.R");
  if (p.D.rows() == 0) throw DimensionError("PmParams: at least one channel is required");
  if (p.Theta.rows() != p.R.rows() || p.Theta.cols() != p.R.cols()) {
    throw DimensionError("PmParams: Theta is " + shape(p.Theta) + " but R is " + shape(p.R));
  }
  if (p.M.rows() != p.D.rows() || p.M.cols() != p.R.rows()) {
    throw DimensionError("PmParams: M is " + shape(p.M) + ", expected " +
                         std::to_string(p.D.rows()) + "x" + std::to_string(p.R.rows()));
  }
}

void check_ac_shapes(const AcParams& a) {
  const Index m = a.S.rows();
  const Index n = a.H1.rows();
  detail::require_square(a.S.rows(), a.S.cols(), "AcParams.S");
  if (m == 0) throw DimensionError("AcParams: at least one channel is required");
  auto expect = [](const ComplexMatrix& x, Index r, Index c, const char* name) {
    if (x.rows() != r || x.cols() != c) {
      throw DimensionError(std::string("AcParams.") + name + " is " + shape(x) +
                           ", expected " + std::to_string(r) + "x" + std::to_string(c));
    }
  };
  expect(a.H1, n, n, "H1");
  expect(a.H2, n, n, "H2");
  expect(a.E1, n, n, "E1");
  expect(a.E2, n, n, "E2");
  expect(a.N1, m, n, "N1");
  expect(a.N2, m, n, "N2");
}

Condition identity_condition(std::string name, double residual, double norm,
                             StructureTolerance tol) {
  const double threshold = tol.absolute + tol.relative * norm;
  return Condition{std::move(name), residual, threshold, residual <= threshold};
}

Condition nonsingular_condition(std::string name, double inverse_condition) {
  return Condition{std::move(name), inverse_condition, kNonsingularThreshold,
                   inverse_condition > kNonsingularThreshold};
}

double complex_inverse_condition(const ComplexMatrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(0) == 0.0 ? 0.0 : sv(sv.size() - 1) / sv(0);
}

[[noreturn]] void throw_invalid(const char* what, const std::vector<Condition>& conditions) {
  double worst = 0.0;
  for (const Condition& c : conditions) {
    if (!c.passed) worst = std::max(worst, c.residual);
  }
  throw StructureError(std::string(what) + ": " + describe_failures(conditions), worst);
}

}  // namespace

ComplexMatrix ito_matrix(Index m) {
  if (m < 1) throw DimensionError("ito_matrix: channel count must be at least 1");
  return ComplexMatrix::Identity(2 * m, 2 * m) +
         Complex(0.0, 1.0) * j_matrix(2 * m).cast<Complex>();
}

std::vector<Condition> pm_conditions(const PmParams& p, StructureTolerance tol) {
  check_pm_shapes(p);
  std::vector<Condition> out;
  out.push_back(identity_condition("D_orthogonal", orthogonality_residual(p.D), p.D.norm(), tol));
  out.push_back(identity_condition("D_symplectic", symplectic_residual(p.D), p.D.norm(), tol));
  out.push_back(identity_condition("R_symmetric", symmetry_residual(p.R), p.R.norm(), tol));
  out.push_back(identity_condition("Theta_skew", skew_residual(p.Theta), p.Theta.norm(), tol));
  if (p.Theta.size() > 0) {
    out.push_back(nonsingular_condition("Theta_nonsingular", detail::inverse_condition(p.Theta)));
  }
  return out;
}

std::vector<Condition> ac_conditions(const AcParams& a, StructureTolerance tol) {
  check_ac_shapes(a);
  std::vector<Condition> out;
  out.push_back(identity_condition("S_unitary", unitarity_residual(a.S), a.S.norm(), tol));
  out.push_back(identity_condition("H1_hermitian", hermitian_residual(a.H1), a.H1.norm(), tol));
  out.push_back(identity_condition("H2_symmetric", (a.H2 - a.H2.transpose()).norm(),
                                   a.H2.norm(), tol));
  if (a.E1.size() > 0) {
    out.push_back(
        nonsingular_condition("E_nonsingular", complex_inverse_condition(doubled_up(a.E1, a.E2))));
  }
  return out;
}

PmParams validated(const PmParams& p, StructureTolerance tol) {
  const std::vector<Condition> conditions = pm_conditions(p, tol);
  if (dominant_failure(conditions) >= 0) {
    throw_invalid("invalid position-momentum parameters", conditions);
  }
  PmParams out = p;
  out.R = 0.5 * (p.R + p.R.transpose());
  return out;
}

AcParams validated(const AcParams& a, StructureTolerance tol) {
  const std::vector<Condition> conditions = ac_conditions(a, tol);
  if (dominant_failure(conditions) >= 0) {
    throw_invalid("invalid annihilation-creation parameters", conditions);
  }
  AcParams out = a;
  out.H1 = 0.5 * (a.H1 + a.H1.adjoint());
  out.H2 = 0.5 * (a.H2 + a.H2.transpose());
  return out;
}

ComplexMatrix generalized_ccr(const AcParams& a) {
  const ComplexMatrix e = doubled_up(a.E1, a.E2);
  return e * bold_j_matrix(e.rows()).cast<Complex>() * e.adjoint();
}

StateSpace assemble_pm_realization(const PmParams& p) {
  check_pm_shapes(p);
  if (p.modes() == 0) return StateSpace::static_gain(p.D);
  const Eigen::FullPivLU<RealMatrix> lu(p.Theta);
  if (!lu.isInvertible()) throw SingularError("assemble_pm_realization: Theta is singular", 0.0);
  const RealMatrix theta_inv = lu.inverse();
  const RealMatrix j = j_matrix(p.D.rows());
  StateSpace ss;
  ss.B = 2.0 * p.Theta * p.M.transpose();
  ss.A = 2.0 * p.Theta * p.R - 0.5 * ss.B * j * ss.B.transpose() * theta_inv;
  ss.C = -p.D * j * ss.B.transpose() * theta_inv;
  ss.D = p.D;
  return ss;
}

StateSpace build_pm_realization(const PmParams& p, StructureTolerance tol) {
  return assemble_pm_realization(validated(p, tol));
}

ComplexStateSpace build_ac_realization(const AcParams& a_in, StructureTolerance tol) {
  const AcParams a = validated(a_in, tol);
  const Index m = a.channels();
  const ComplexMatrix theta = generalized_ccr(a);
  const ComplexMatrix h = doubled_up(a.H1, a.H2);
  const ComplexMatrix n = doubled_up(a.N1, a.N2);
  const ComplexMatrix k = doubled_up(a.S, ComplexMatrix::Zero(m, m));
  const ComplexMatrix bj = bold_j_matrix(2 * m).cast<Complex>();
  const Complex i(0.0, 1.0);
  ComplexStateSpace out;
  out.F = -i * theta * h - 0.5 * theta * n.adjoint() * bj * n;
  out.G = -theta * n.adjoint() * bj * k;
  out.L = n;
  out.K = k;
  return out;
}

ComplexMatrix eval_tf(const ComplexStateSpace& ss, Complex s) {
  const Index n = ss.F.rows();
  if (n == 0) return ss.K;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(ss.F, false);
  for (Index i = 0; i < n; ++i) {
    const Complex lambda = es.eigenvalues()(i);
    if (std::abs(s - lambda) < kNearPoleGuard * (1.0 + std::abs(s))) {
      throw NearPoleError("eval_tf: s is within the near-pole guard of an eigenvalue of F",
                          lambda);
    }
  }
  const ComplexMatrix resolvent = s * ComplexMatrix::Identity(n, n) - ss.F;
  return ss.L * resolvent.partialPivLu().solve(ss.G) + ss.K;
}

PmParams ac_to_pm(const AcParams& a_in, StructureTolerance tol) {
  const AcParams a = validated(a_in, tol);
  const Index m = a.channels();
  const Index n = a.modes();
  PmParams p;
  p.D = nabla(a.S, ComplexMatrix::Zero(m, m));
  p.M = -0.5 * p.D.transpose() * j_matrix(2 * m) * nabla(a.N1, a.N2);
  p.R = 0.5 * nabla(a.H1, a.H2);
  if (n == 0) {
    p.Theta = RealMatrix(0, 0);
  } else {
    const RealMatrix e = nabla(a.E1, a.E2);
    p.Theta = e * j_matrix(2 * n) * e.transpose();
  }
  return p;
}

AcParams pm_to_ac(const PmParams& p_in, StructureTolerance tol) {
  const PmParams p = validated(p_in, tol);
  const Index m = p.channels();
  const Index n = p.modes();
  const BoldBlocks d = extract_bold_blocks(p.D);
  // Holds for orthosymplectic D; validated() has already enforced that.
  if (!tol.accepts(d.second.norm(), p.D.norm())) {
    throw StructureError("pm_to_ac: D has a nonzero anti-linear block", d.second.norm());
  }

  AcParams a;
  a.S = d.first;
  if (n == 0) {
    a.N1 = a.N2 = ComplexMatrix(m, 0);
    a.H1 = a.H2 = a.E1 = a.E2 = ComplexMatrix(0, 0);
    return a;
  }
  const BoldBlocks mb = extract_bold_blocks(p.M);
  const ComplexMatrix coupling = Complex(0.0, -2.0) * doubled_up(a.S, ComplexMatrix::Zero(m, m)) *
                                 bold_j_matrix(2 * m).cast<Complex>() *
                                 doubled_up(mb.first, mb.second);
  a.N1 = coupling.topLeftCorner(m, n);
  a.N2 = coupling.topRightCorner(m, n);

  const BoldBlocks rb = extract_bold_blocks(p.R);
  a.H1 = 2.0 * rb.first;
  a.H2 = 2.0 * rb.second;

  const BoldBlocks eb = extract_bold_blocks(cholesky_like(p.Theta, tol).Sigma);
  a.E1 = eb.first;
  a.E2 = eb.second;
  return a;
}

double pm_to_ac_realization_consistency(const PmParams& p) {
  const StateSpace real = build_pm_realization(p);
  const ComplexStateSpace cplx = build_ac_realization(pm_to_ac(p));
  const Index n2 = real.states();
  const Index m2 = real.D.rows();
  const ComplexMatrix ts = t_matrix(n2);
  const ComplexMatrix tc = t_matrix(m2);
  auto mismatch = [](const ComplexMatrix& conjugated, const RealMatrix& expected) {
    return (conjugated - expected.cast<Complex>()).norm() / std::max(1.0, expected.norm());
  };
  double worst = mismatch(0.5 * tc * cplx.K * tc.adjoint(), real.D);
  if (n2 > 0) {
    worst = std::max(worst, mismatch(0.5 * ts * cplx.F * ts.adjoint(), real.A));
    worst = std::max(worst, mismatch(0.5 * ts * cplx.G * tc.adjoint(), real.B));
    worst = std::max(worst, mismatch(0.5 * tc * cplx.L * ts.adjoint(), real.C));
  }
  return worst;
}

}  // namespace oqho
