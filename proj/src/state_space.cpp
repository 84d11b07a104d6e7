#include "oqho/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "oqho/errors.hpp"

namespace oqho {
namespace {

constexpr double kSingularFeedthrough = 1e-12;

bool by_real_then_imag(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

namespace detail {

RealMatrix krylov(const RealMatrix& a, const RealMatrix& b) {
  const Index n = a.rows();
  const Index p = b.cols();
  RealMatrix k(n, n * p);
  if (n == 0 || p == 0) return k;
  k.leftCols(p) = b;
  for (Index i = 1; i < n; ++i) {
    k.middleCols(i * p, p) = a * k.middleCols((i - 1) * p, p);
  }
  return k;
}

}  // namespace detail

namespace {

Index numerical_rank(const RealMatrix& m, RankTolerance tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double relative =
      tol.relative.value_or(static_cast<double>(std::max(m.rows(), m.cols())) *
                            std::numeric_limits<double>::epsilon());
  const double cutoff = std::max(relative * sv(0), tol.absolute);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

// Orthonormal basis of the controllable subspace of (a, b) by the staircase
// algorithm. Singular values at or below `cutoff` are treated as zero.
RealMatrix controllable_basis(const RealMatrix& a, const RealMatrix& b, double cutoff) {
  const Index n = a.rows();
  RealMatrix z = RealMatrix::Identity(n, n);
  RealMatrix abar = a;
  RealMatrix block = b;
  Index offset = 0;
  while (offset < n && block.cols() > 0) {
    const Index remaining = n - offset;
    Eigen::JacobiSVD<RealMatrix> svd(block, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cutoff) ++r;
    }
    if (r == 0) break;
    RealMatrix p = RealMatrix::Identity(n, n);
    p.block(offset, offset, remaining, remaining) = svd.matrixU();
    abar = p.transpose() * abar * p;
    z = z * p;
    if (r >= remaining) {
      offset = n;
      break;
    }
    block = abar.block(offset + r, offset, remaining - r, r);
    offset += r;
  }
  return z.leftCols(offset);
}

}  // namespace

namespace detail {

double inverse_condition(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

void require_invertible_feedthrough(const RealMatrix& d, const char* what) {
  detail::require_square(d.rows(), d.cols(), what);
  if (d.size() == 0) return;
  const double rc = inverse_condition(d);
  if (rc < kSingularFeedthrough) {
    throw SingularError(std::string(what) + ": feedthrough D is singular", rc);
  }
}

std::vector<Complex> sorted_eigenvalues(const RealMatrix& m) {
  std::vector<Complex> out;
  if (m.rows() == 0) return out;
  Eigen::EigenSolver<RealMatrix> es(m, false);
  if (es.info() != Eigen::Success) {
    throw Error("eigenvalue computation did not converge");
  }
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    out.push_back(es.eigenvalues()(i));
  }
  std::sort(out.begin(), out.end(), by_real_then_imag);
  return out;
}

}  // namespace detail

void StateSpace::validate() const {
  const Index n = A.rows();
  if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != C.rows() ||
      D.cols() != B.cols()) {
    throw DimensionError("state space: inconsistent block shapes A " +
                         std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                         ", B " + std::to_string(B.rows()) + "x" +
                         std::to_string(B.cols()) + ", C " + std::to_string(C.rows()) +
                         "x" + std::to_string(C.cols()) + ", D " +
                         std::to_string(D.rows()) + "x" + std::to_string(D.cols()));
  }
}

StateSpace StateSpace::static_gain(const RealMatrix& d) {
  return StateSpace{RealMatrix(0, 0), RealMatrix(0, d.cols()), RealMatrix(d.rows(), 0), d};
}

ComplexMatrix eval_tf(const StateSpace& ss, Complex s) {
  ss.validate();
  if (ss.states() == 0) return ss.D.cast<Complex>();
  for (const Complex& lambda : detail::sorted_eigenvalues(ss.A)) {
    if (std::abs(s - lambda) < kNearPoleGuard * (1.0 + std::abs(s))) {
      throw NearPoleError("eval_tf: s is within the near-pole guard of an eigenvalue of A",
                          lambda);
    }
  }
  const Index n = ss.states();
  const ComplexMatrix resolvent = s * ComplexMatrix::Identity(n, n) - ss.A.cast<Complex>();
  const ComplexMatrix x = resolvent.partialPivLu().solve(ss.B.cast<Complex>());
  return ss.C.cast<Complex>() * x + ss.D.cast<Complex>();
}

ComplexMatrix eval_conjugate_tf(const StateSpace& ss, Complex s) {
  return eval_tf(ss, -std::conj(s)).adjoint();
}

Index controllability_rank(const StateSpace& ss, RankTolerance tol) {
  ss.validate();
  return numerical_rank(detail::krylov(ss.A, ss.B), tol);
}

Index observability_rank(const StateSpace& ss, RankTolerance tol) {
  ss.validate();
  return numerical_rank(detail::krylov(ss.A.transpose(), ss.C.transpose()), tol);
}

bool is_minimal(const StateSpace& ss, RankTolerance tol) {
  return controllability_rank(ss, tol) == ss.states() &&
         observability_rank(ss, tol) == ss.states();
}

StateSpace minimal_realization(const StateSpace& ss, double relative_tol) {
  ss.validate();
  const double c_scale = std::max(ss.A.norm(), ss.B.norm());
  const RealMatrix zc = controllable_basis(ss.A, ss.B, relative_tol * c_scale);
  StateSpace reachable{zc.transpose() * ss.A * zc, zc.transpose() * ss.B, ss.C * zc, ss.D};

  const double o_scale = std::max(reachable.A.norm(), reachable.C.norm());
  const RealMatrix zo = controllable_basis(reachable.A.transpose(), reachable.C.transpose(),
                                           relative_tol * o_scale);
  return StateSpace{zo.transpose() * reachable.A * zo, zo.transpose() * reachable.B,
                    reachable.C * zo, ss.D};
}

StateSpace inverse_realization(const StateSpace& ss) {
  ss.validate();
  detail::require_invertible_feedthrough(ss.D, "inverse_realization");
  const RealMatrix d_inv = ss.D.fullPivLu().inverse();
  return StateSpace{ss.A - ss.B * d_inv * ss.C, ss.B * d_inv, -d_inv * ss.C, d_inv};
}

StateSpace similarity_transform(const StateSpace& ss, const RealMatrix& t) {
  ss.validate();
  if (t.rows() != ss.states() || t.cols() != ss.states()) {
    throw DimensionError("similarity_transform: T must match the state dimension");
  }
  const Eigen::FullPivLU<RealMatrix> lu(t);
  if (!lu.isInvertible()) {
    throw SingularError("similarity_transform: T is singular", 0.0);
  }
  const RealMatrix t_inv = lu.inverse();
  return StateSpace{t * ss.A * t_inv, t * ss.B, ss.C * t_inv, ss.D};
}

std::vector<Complex> poles(const StateSpace& ss) {
  ss.validate();
  return detail::sorted_eigenvalues(ss.A);
}

std::vector<Complex> transmission_zeros(const StateSpace& ss) {
  ss.validate();
  detail::require_invertible_feedthrough(ss.D, "transmission_zeros");
  if (ss.states() == 0) return {};
  const RealMatrix d_inv = ss.D.fullPivLu().inverse();
  return detail::sorted_eigenvalues(ss.A - ss.B * d_inv * ss.C);
}

MultisetMatch match_multisets(std::span<const Complex> a, std::span<const Complex> b,
                              double tol) {
  MultisetMatch out;
  if (a.size() != b.size()) return out;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    std::size_t best = b.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_distance) {
        best_distance = d;
        best = j;
      }
    }
    used[best] = true;
    out.max_distance = std::max(out.max_distance, best_distance);
  }
  out.matched = out.max_distance <= tol;
  return out;
}

SpectrumReport spectrum_report(const StateSpace& ss, double tol) {
  SpectrumReport report;
  report.poles = poles(ss);
  report.zeros = transmission_zeros(ss);

  std::vector<Complex> mirrored;
  mirrored.reserve(report.poles.size());
  for (const Complex& p : report.poles) mirrored.push_back(-std::conj(p));
  const MultisetMatch match = match_multisets(report.zeros, mirrored, tol);
  report.mirror_symmetric = match.matched;
  report.max_pairing_distance = match.max_distance;

  report.spectrally_generic = true;
  for (const Complex& lambda : report.poles) {
    for (const Complex& nu : report.poles) {
      if (std::abs(lambda + std::conj(nu)) <= tol) report.spectrally_generic = false;
    }
  }
  return report;
}

StateSpace siso_realization(const RationalEntry& entry) {
  if (entry.den.empty() || entry.den.front() == 0.0) {
    throw Error("rational entry: denominator must have a nonzero leading coefficient");
  }
  auto first_nonzero = std::find_if(entry.num.begin(), entry.num.end(),
                                    [](double c) { return c != 0.0; });
  std::vector<double> num(first_nonzero, entry.num.end());
  if (num.empty()) num.push_back(0.0);

  const std::size_t order = entry.den.size() - 1;
  if (num.size() - 1 > order) {
    throw Error("rational entry: improper (numerator degree " +
                std::to_string(num.size() - 1) + " exceeds denominator degree " +
                std::to_string(order) + ")");
  }
  const double lead = entry.den.front();
  std::vector<double> a(order + 1);
  std::vector<double> b(order + 1, 0.0);
  for (std::size_t i = 0; i <= order; ++i) a[i] = entry.den[i] / lead;
  std::copy(num.begin(), num.end(), b.begin() + static_cast<std::ptrdiff_t>(order + 1 - num.size()));
  for (double& c : b) c /= lead;

  const auto k = static_cast<Index>(order);
  StateSpace ss{RealMatrix::Zero(k, k), RealMatrix::Zero(k, 1), RealMatrix::Zero(1, k),
                RealMatrix::Constant(1, 1, b[0])};
  for (Index i = 0; i < k; ++i) {
    const auto u = static_cast<std::size_t>(i) + 1;
    // + 0.0 keeps exact zeros from printing as -0.
    ss.A(0, i) = -a[u] + 0.0;
    ss.C(0, i) = b[u] - b[0] * a[u] + 0.0;
    if (i + 1 < k) ss.A(i + 1, i) = 1.0;
  }
  if (k > 0) ss.B(0, 0) = 1.0;
  return ss;
}

StateSpace block_diag(std::span<const StateSpace> blocks) {
  if (blocks.empty()) throw DimensionError("block_diag: empty block list");
  Index n = 0, p = 0, q = 0;
  for (const StateSpace& b : blocks) {
    b.validate();
    n += b.states();
    p += b.inputs();
    q += b.outputs();
  }
  StateSpace out{RealMatrix::Zero(n, n), RealMatrix::Zero(n, p), RealMatrix::Zero(q, n),
                 RealMatrix::Zero(q, p)};
  Index si = 0, ii = 0, oi = 0;
  for (const StateSpace& b : blocks) {
    out.A.block(si, si, b.states(), b.states()) = b.A;
    out.B.block(si, ii, b.states(), b.inputs()) = b.B;
    out.C.block(oi, si, b.outputs(), b.states()) = b.C;
    out.D.block(oi, ii, b.outputs(), b.inputs()) = b.D;
    si += b.states();
    ii += b.inputs();
    oi += b.outputs();
  }
  return out;
}

StateSpace realize_diagonal(std::span<const RationalEntry> entries) {
  std::vector<StateSpace> blocks;
  blocks.reserve(entries.size());
  for (const RationalEntry& e : entries) blocks.push_back(siso_realization(e));
  return block_diag(blocks);
}

}  // namespace oqho
