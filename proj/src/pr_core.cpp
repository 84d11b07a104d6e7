#include "oqho/pr_core.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>

#include "oqho/errors.hpp"
#include "oqho/skew_factor.hpp"

namespace oqho {
namespace {

constexpr double kNonsingularThreshold = 1e-12;
constexpr double kLeastSquaresRankThreshold = 1e-10;

void require_quantum_ports(const StateSpace& ss, const char* what) {
  ss.validate();
  detail::require_square(ss.D.rows(), ss.D.cols(), what);
  detail::require_even(ss.D.rows(), what);
  if (ss.D.rows() == 0) throw DimensionError(std::string(what) + ": no channels");
}

double safe_ratio(double numerator, double denominator) {
  return numerator / std::max(denominator, std::numeric_limits<double>::min());
}

Condition within(std::string name, double residual, double tol) {
  return Condition{std::move(name), residual, tol, residual <= tol};
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::VectorXd vec(const RealMatrix& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

void finish(PrReport& report, std::vector<std::string> reasons, bool inconclusive,
            int gate_count) {
  std::vector<Condition> gating(report.conditions.begin(),
                                report.conditions.begin() + gate_count);
  int dominant = dominant_failure(gating);
  if (dominant < 0) dominant = dominant_failure(report.conditions);
  if (dominant >= 0) {
    report.dominant_condition = report.conditions[static_cast<std::size_t>(dominant)].name;
    report.verdict = Verdict::kNotRealizable;
  } else if (inconclusive) {
    report.verdict = Verdict::kInconclusive;
  } else {
    report.verdict = Verdict::kRealizable;
  }
  std::string joined;
  for (const std::string& r : reasons) {
    if (!joined.empty()) joined += "; ";
    joined += r;
  }
  report.failure_reason = joined;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kRealizable:
      return "PR";
    case Verdict::kNotRealizable:
      return "not-PR";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "PR") return Verdict::kRealizable;
  if (s == "not-PR") return Verdict::kNotRealizable;
  if (s == "inconclusive") return Verdict::kInconclusive;
  throw ParseError("unknown verdict '" + std::string(s) + "'");
}

JjUnitarityResult check_jj_unitary(const StateSpace& ss, const SampleOptions& samples,
                                   double tol) {
  require_quantum_ports(ss, "check_jj_unitary");
  JjUnitarityResult out;
  const StateSpace systems[] = {ss};
  auto points = sample_points(systems, samples);
  if (!points) return out;
  out.placed = true;
  out.points = std::move(*points);

  const ComplexMatrix j = j_matrix(ss.D.rows()).cast<Complex>();
  for (const Complex& s : out.points) {
    const ComplexMatrix g = eval_tf(ss, s);
    const ComplexMatrix gc = eval_conjugate_tf(ss, s);
    const double scale = std::max(1.0, gc.norm() * g.norm());
    out.max_residual = std::max(out.max_residual, (gc * j * g - j).norm() / scale);
    out.max_dual_residual = std::max(out.max_dual_residual, (g * j * gc - j).norm() / scale);
  }
  out.unitary = out.max_residual <= tol && out.max_dual_residual <= tol;
  return out;
}

PrReport check_pr_frequency(const StateSpace& ss, double tol, const SampleOptions& samples) {
  require_quantum_ports(ss, "check_pr_frequency");
  PrReport report;
  report.check = "frequency";
  report.tolerance = tol;
  report.d_orthogonality_residual = orthogonality_residual(ss.D);
  report.d_symplectic_residual = symplectic_residual(ss.D);

  const JjUnitarityResult jj = check_jj_unitary(ss, samples, tol);
  report.jj_unitarity_max_residual = std::max(jj.max_residual, jj.max_dual_residual);
  report.sample_points = jj.points;

  report.conditions.push_back(within("d_orthogonality", report.d_orthogonality_residual, tol));
  std::vector<std::string> reasons;
  if (!report.conditions.back().passed) reasons.push_back("D not orthogonal");
  if (jj.placed) {
    report.conditions.push_back(within("jj_unitarity", jj.max_residual, tol));
    report.conditions.push_back(within("jj_unitarity_dual", jj.max_dual_residual, tol));
    if (!jj.unitary) reasons.push_back("transfer function is not (J,J)-unitary");
  } else {
    reasons.push_back("could not place sample points away from the poles");
  }
  finish(report, std::move(reasons), !jj.placed, static_cast<int>(report.conditions.size()));
  if (report.verdict == Verdict::kRealizable) report.failure_reason.clear();
  return report;
}

PrReport check_pr_time_domain(const StateSpace& ss, const RealMatrix& theta, double tol) {
  require_quantum_ports(ss, "check_pr_time_domain");
  if (theta.rows() != ss.states() || theta.cols() != ss.states()) {
    throw DimensionError("check_pr_time_domain: Theta must be " +
                         std::to_string(ss.states()) + "x" + std::to_string(ss.states()));
  }
  PrReport report;
  report.check = "time_domain";
  report.tolerance = tol;
  report.d_orthogonality_residual = orthogonality_residual(ss.D);
  report.d_symplectic_residual = symplectic_residual(ss.D);
  report.conditions.push_back(
      within("d_orthosymplectic",
             std::max(report.d_orthogonality_residual, report.d_symplectic_residual), tol));
  std::vector<std::string> reasons;
  if (!report.conditions.back().passed) reasons.push_back("D not orthosymplectic");

  if (ss.states() > 0) {
    const double skew_res = skew_residual(theta);
    if (!StructureTolerance{}.accepts(skew_res, theta.norm())) {
      throw StructureError("check_pr_time_domain: Theta is not skew-symmetric", skew_res);
    }
    const double rc = detail::inverse_condition(theta);
    if (rc < kNonsingularThreshold) {
      throw SingularError("check_pr_time_domain: Theta is singular", rc);
    }
    const RealMatrix theta_inv = theta.fullPivLu().inverse();
    const RealMatrix j = j_matrix(ss.D.rows());
    const RealMatrix bjb = ss.B * j * ss.B.transpose();

    const RealMatrix ccr = ss.A * theta + theta * ss.A.transpose() + bjb;
    report.conditions.push_back(within(
        "ccr_preservation",
        ccr.norm() / std::max(1.0, 2.0 * ss.A.norm() * theta.norm() + ss.B.squaredNorm()),
        tol));
    if (!report.conditions.back().passed) {
      reasons.push_back("A Theta + Theta A^T + B J B^T != 0");
    }

    const RealMatrix coupling = ss.C + ss.D * j * ss.B.transpose() * theta_inv;
    report.conditions.push_back(within(
        "output_coupling",
        coupling.norm() /
            std::max(1.0, ss.C.norm() + ss.D.norm() * ss.B.norm() * theta_inv.norm()),
        tol));
    if (!report.conditions.back().passed) reasons.push_back("C != -D J B^T Theta^-1");

    const RealMatrix r_raw = 0.5 * theta_inv * (ss.A + 0.5 * bjb * theta_inv);
    report.conditions.push_back(within(
        "hamiltonian_symmetry", symmetry_residual(r_raw) / std::max(1.0, r_raw.norm()), tol));
    if (!report.conditions.back().passed) reasons.push_back("recovered R is not symmetric");
  }
  const int gate_count = std::min<int>(3, static_cast<int>(report.conditions.size()));
  finish(report, std::move(reasons), false, gate_count);
  return report;
}

FSolution compute_f(const StateSpace& ss, double tol) {
  require_quantum_ports(ss, "compute_f");
  if (ss.states() == 0) {
    throw Error("compute_f: static system has no dynamics, so there is no F to compute");
  }
  detail::require_invertible_feedthrough(ss.D, "compute_f");
  const Index n = ss.states();
  const Index p = ss.D.rows();
  const RealMatrix d_inv = ss.D.fullPivLu().inverse();
  const RealMatrix j = j_matrix(p);
  const RealMatrix zeros_a = ss.A - ss.B * d_inv * ss.C;
  const RealMatrix jbt = j * ss.B.transpose();
  const RealMatrix bd = ss.B * d_inv;
  const RealMatrix id = RealMatrix::Identity(n, n);

  // vec(X F Y) = (Y^T kron X) vec(F), column-major vec.
  const RealMatrix k1 = kron(id, jbt);
  const RealMatrix k2 = kron(bd.transpose(), id);
  const RealMatrix k3 = kron(id, ss.A.transpose()) + kron(zeros_a.transpose(), id);
  const double w1 = 1.0 / std::max(k1.norm(), 1e-300);
  const double w2 = 1.0 / std::max(k2.norm(), 1e-300);
  const double w3 = 1.0 / std::max(k3.norm(), 1e-300);

  RealMatrix lhs(k1.rows() + k2.rows() + k3.rows(), n * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(lhs.rows());
  lhs.topRows(k1.rows()) = w1 * k1;
  lhs.middleRows(k1.rows(), k2.rows()) = w2 * k2;
  lhs.bottomRows(k3.rows()) = w3 * k3;
  rhs.head(k1.rows()) = w1 * vec(-d_inv * ss.C);
  rhs.segment(k1.rows(), k2.rows()) = w2 * vec(ss.C.transpose() * j);

  Eigen::ColPivHouseholderQR<RealMatrix> qr(lhs);
  qr.setThreshold(kLeastSquaresRankThreshold);
  if (qr.rank() < n * n) {
    throw NotRealizableError(
        "compute_f: similarity equations do not determine F uniquely (realization not minimal)");
  }
  const Eigen::VectorXd solution = qr.solve(rhs);
  RealMatrix raw = Eigen::Map<const RealMatrix>(solution.data(), n, n);

  FSolution out;
  out.raw_asymmetry = safe_ratio((raw + raw.transpose()).norm(), raw.norm());
  out.F = 0.5 * (raw - raw.transpose());
  const RealMatrix& f = out.F;
  const double rc = detail::inverse_condition(f);
  const RealMatrix f_inv = rc > 0.0 ? RealMatrix(f.fullPivLu().inverse())
                                    : RealMatrix(RealMatrix::Zero(n, n));

  auto& eq = out.equation_residuals;
  eq.push_back(within("output_relation",
                      safe_ratio((jbt * f + d_inv * ss.C).norm(),
                                 jbt.norm() * f.norm() + (d_inv * ss.C).norm()),
                      tol));
  eq.push_back(within("input_relation",
                      safe_ratio((ss.C.transpose() * j - f * bd).norm(),
                                 ss.C.norm() + f.norm() * bd.norm()),
                      tol));
  eq.push_back(within("state_similarity",
                      safe_ratio((ss.A.transpose() * f + f * zeros_a).norm(),
                                 f.norm() * (ss.A.norm() + zeros_a.norm())),
                      tol));
  eq.push_back(within("f_skewness", out.raw_asymmetry, tol));
  eq.push_back(Condition{"f_nonsingular", rc, kNonsingularThreshold, rc > kNonsingularThreshold});
  eq.push_back(within("input_lyapunov",
                      safe_ratio((ss.A * f_inv + f_inv * ss.A.transpose() +
                                  ss.B * j * ss.B.transpose())
                                     .norm(),
                                 2.0 * ss.A.norm() * f_inv.norm() + ss.B.squaredNorm()),
                      tol));
  // Implied by the others; reported only.
  eq.push_back(within("output_lyapunov",
                      safe_ratio((ss.A.transpose() * f.transpose() + f.transpose() * ss.A +
                                  ss.C.transpose() * j * ss.C)
                                     .norm(),
                                 2.0 * ss.A.norm() * f.norm() + ss.C.squaredNorm()),
                      tol));

  std::vector<Condition> gating(eq.begin(), eq.end() - 1);
  if (dominant_failure(gating) >= 0) {
    throw NotRealizableError("compute_f: no skew nonsingular F within tolerance: " +
                             describe_failures(gating));
  }
  return out;
}

RealMatrix compute_f_via_controllability(const StateSpace& ss) {
  require_quantum_ports(ss, "compute_f_via_controllability");
  detail::require_invertible_feedthrough(ss.D, "compute_f_via_controllability");
  const RealMatrix d_inv = ss.D.fullPivLu().inverse();
  const RealMatrix j = j_matrix(ss.D.rows());
  const RealMatrix k1 = detail::krylov(ss.A - ss.B * d_inv * ss.C, ss.B * d_inv);
  const RealMatrix k2 = detail::krylov(-ss.A.transpose(), ss.C.transpose() * j);
  // F K1 = K2  <=>  K1^T F^T = K2^T
  const RealMatrix ft = k1.transpose().colPivHouseholderQr().solve(k2.transpose());
  return ft.transpose();
}

double transfer_mismatch(const StateSpace& first, const StateSpace& second,
                         std::span<const Complex> points) {
  double worst = 0.0;
  for (const Complex& s : points) {
    const ComplexMatrix g1 = eval_tf(first, s);
    const ComplexMatrix g2 = eval_tf(second, s);
    worst = std::max(worst, (g1 - g2).norm() / std::max(1.0, g1.norm()));
  }
  return worst;
}

SynthesisResult synthesize(const StateSpace& ss, const RealMatrix& theta_target,
                           const SynthesisOptions& options) {
  require_quantum_ports(ss, "synthesize");
  SynthesisResult out;
  out.original_states = ss.states();
  const StateSpace work = is_minimal(ss) ? ss : minimal_realization(ss);
  out.minimal_states = work.states();

  out.frequency_report = check_pr_frequency(work, options.check_tolerance, options.samples);
  if (out.frequency_report.verdict != Verdict::kRealizable) {
    throw NotRealizableError("synthesize: transfer function is not physically realizable (" +
                             std::string(to_string(out.frequency_report.verdict)) + ": " +
                             out.frequency_report.failure_reason + ")");
  }
  const Index n = work.states();
  if (theta_target.rows() != n || theta_target.cols() != n) {
    throw DimensionError("synthesize: target CCR matrix must be " + std::to_string(n) + "x" +
                         std::to_string(n) + " to match the minimal realization");
  }
  const Index p = work.D.rows();
  if (n == 0) {
    out.params = PmParams{work.D, RealMatrix(p, 0), RealMatrix(0, 0), RealMatrix(0, 0)};
    out.F = out.Rhat = out.Sigma = RealMatrix(0, 0);
    out.rebuilt_time_domain_report = check_pr_time_domain(
        StateSpace::static_gain(work.D), RealMatrix(0, 0), options.rebuild_tolerance);
    return out;
  }

  FSolution fs = compute_f(work, options.check_tolerance);
  out.F = std::move(fs.F);
  out.f_raw_asymmetry = fs.raw_asymmetry;
  out.equation_residuals = std::move(fs.equation_residuals);

  const RealMatrix f_inv = out.F.fullPivLu().inverse();
  const RealMatrix j = j_matrix(p);
  const RealMatrix rhat_raw =
      0.5 * out.F * (work.A * f_inv + 0.5 * work.B * j * work.B.transpose()) * out.F;
  out.rhat_raw_asymmetry = safe_ratio(symmetry_residual(rhat_raw), rhat_raw.norm());
  out.Rhat = 0.5 * (rhat_raw + rhat_raw.transpose());
  out.equation_residuals.push_back(
      within("rhat_symmetry", out.rhat_raw_asymmetry, options.check_tolerance));

  // F^-1 = Sigma Theta Sigma^T.
  const RealMatrix f_inv_skew = 0.5 * (f_inv - f_inv.transpose());
  out.Sigma = relate_ccr(f_inv_skew, theta_target);

  const RealMatrix theta_inv = theta_target.fullPivLu().inverse();
  const RealMatrix sigma_inv_b = out.Sigma.fullPivLu().solve(work.B);
  RealMatrix r = out.Sigma.transpose() * out.Rhat * out.Sigma;
  out.params.D = work.D;
  out.params.M = -0.5 * sigma_inv_b.transpose() * theta_inv;
  out.params.R = 0.5 * (r + r.transpose());
  out.params.Theta = theta_target;

  const StateSpace rebuilt = assemble_pm_realization(out.params);
  const StateSpace both[] = {ss, rebuilt};
  const auto points = sample_points(both, options.samples);
  if (!points) {
    throw Error("synthesize: could not place verification samples away from the poles");
  }
  out.rebuild_residual = transfer_mismatch(ss, rebuilt, *points);
  if (out.rebuild_residual > options.rebuild_tolerance) {
    throw Error("synthesize: rebuilt transfer function differs from the input (residual " +
                std::to_string(out.rebuild_residual) + ")");
  }
  out.rebuilt_time_domain_report =
      check_pr_time_domain(rebuilt, theta_target, options.rebuild_tolerance);
  if (out.rebuilt_time_domain_report.verdict != Verdict::kRealizable) {
    throw Error("synthesize: rebuilt realization fails the time-domain check: " +
                out.rebuilt_time_domain_report.failure_reason);
  }
  return out;
}

bool pr_zero_pole_mirror(const StateSpace& ss) { return spectrum_report(ss).mirror_symmetric; }

}  // namespace oqho
