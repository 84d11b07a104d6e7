#include "oqho/state_space.hpp"

#include <gtest/gtest.h>

#include "oqho/errors.hpp"
#include "oqho/reference_example.hpp"
#include "support/random_systems.hpp"

namespace oqho {
namespace {

using testing::Rng;

StateSpace random_system(Index n, Index m, Rng& rng) {
  StateSpace ss{testing::random_real(n, n, rng), testing::random_real(n, m, rng),
                testing::random_real(m, n, rng),
                RealMatrix::Identity(m, m) + testing::random_real(m, m, rng, 0.3)};
  return ss;
}

TEST(EvalTf, MatchesHandComputedFirstOrder) {
  // 1/(s+2) with D = 1.
  StateSpace ss{RealMatrix::Constant(1, 1, -2.0), RealMatrix::Constant(1, 1, 1.0),
                RealMatrix::Constant(1, 1, 1.0), RealMatrix::Constant(1, 1, 1.0)};
  const Complex s(0.5, 1.5);
  EXPECT_NEAR(std::abs(eval_tf(ss, s)(0, 0) - (1.0 + 1.0 / (s + 2.0))), 0.0, 1e-15);
}

TEST(EvalTf, RefusesPointsNearPoles) {
  StateSpace ss{RealMatrix::Constant(1, 1, -2.0), RealMatrix::Constant(1, 1, 1.0),
                RealMatrix::Constant(1, 1, 1.0), RealMatrix::Constant(1, 1, 1.0)};
  EXPECT_THROW(eval_tf(ss, Complex(-2.0, 1e-12)), NearPoleError);
  try {
    eval_tf(ss, Complex(-2.0, 0.0));
  } catch (const NearPoleError& e) {
    EXPECT_EQ(e.eigenvalue(), Complex(-2.0, 0.0));
  }
  EXPECT_NO_THROW(eval_tf(ss, Complex(-2.0, 1e-6)));
}

TEST(EvalTf, StaticGain) {
  const RealMatrix d = RealMatrix::Identity(2, 2) * 3.0;
  EXPECT_EQ(eval_tf(StateSpace::static_gain(d), Complex(1, 1)), d.cast<Complex>());
}

TEST(EvalTf, ConjugateTransferFunction) {
  Rng rng(4);
  const StateSpace ss = random_system(3, 2, rng);
  const Complex s(0.3, -0.7);
  const ComplexMatrix expected = eval_tf(ss, -std::conj(s)).adjoint();
  EXPECT_NEAR((eval_conjugate_tf(ss, s) - expected).norm(), 0.0, 1e-15);
}

TEST(EvalTf, ConjugateOfReferenceExampleAtTwo) {
  // Gamma~(2) = Gamma(-2)^* = diag(1/2, 3, 2/3, 3).
  const ComplexMatrix g = eval_conjugate_tf(realize_diagonal(reference_example::transfer_entries()),
                                            Complex(2.0, 0.0));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 0.5, 3.0, 2.0 / 3.0, 3.0;
  EXPECT_LT((g - expected).norm(), 1e-14);
}

TEST(StateSpace, ValidateCatchesShapeMismatch) {
  StateSpace bad{RealMatrix::Zero(2, 2), RealMatrix::Zero(3, 1), RealMatrix::Zero(1, 2),
                 RealMatrix::Zero(1, 1)};
  EXPECT_THROW(bad.validate(), DimensionError);
  EXPECT_THROW(eval_tf(bad, Complex(1, 0)), DimensionError);
}

TEST(InverseRealization, ProductIsIdentity) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const StateSpace ss = random_system(2 + trial % 4, 1 + trial % 3, rng);
    const StateSpace inv = inverse_realization(ss);
    const Complex s = testing::random_point(rng);
    const ComplexMatrix product = eval_tf(inv, s) * eval_tf(ss, s);
    const ComplexMatrix id = ComplexMatrix::Identity(product.rows(), product.cols());
    EXPECT_LT((product - id).norm() / std::max(1.0, eval_tf(ss, s).norm()), 1e-10);
  }
}

TEST(InverseRealization, RejectsSingularFeedthrough) {
  StateSpace ss{RealMatrix::Identity(2, 2), RealMatrix::Identity(2, 2),
                RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2)};
  EXPECT_THROW(inverse_realization(ss), SingularError);
  EXPECT_THROW(transmission_zeros(ss), SingularError);
}

TEST(TransmissionZeros, EqualPolesOfInverse) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSpace ss = random_system(4, 2, rng);
    const auto zeros = transmission_zeros(ss);
    const auto inverse_poles = poles(inverse_realization(ss));
    ASSERT_EQ(zeros.size(), inverse_poles.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) EXPECT_EQ(zeros[i], inverse_poles[i]);
  }
}

TEST(Similarity, PreservesPolesAndTransferFunction) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const StateSpace ss = random_system(4, 2, rng);
    const RealMatrix t = RealMatrix::Identity(4, 4) + testing::random_real(4, 4, rng, 0.3);
    const StateSpace moved = similarity_transform(ss, t);
    const auto match = match_multisets(poles(ss), poles(moved), 1e-8);
    EXPECT_TRUE(match.matched) << match.max_distance;
    const Complex s = testing::random_point(rng);
    EXPECT_LT((eval_tf(ss, s) - eval_tf(moved, s)).norm(), 1e-10);
  }
  EXPECT_THROW(similarity_transform(random_system(2, 1, rng), RealMatrix::Zero(2, 2)),
               SingularError);
}

TEST(Minimality, DetectsHiddenModes) {
  Rng rng(8);
  const StateSpace ss = random_system(3, 2, rng);
  EXPECT_TRUE(is_minimal(ss));
  // Append an uncontrollable mode and an unobservable mode.
  StateSpace padded{RealMatrix::Zero(5, 5), RealMatrix::Zero(5, 2), RealMatrix::Zero(2, 5), ss.D};
  padded.A.topLeftCorner(3, 3) = ss.A;
  padded.A(3, 3) = -4.0;
  padded.A(4, 4) = 2.5;
  padded.B.topRows(3) = ss.B;
  padded.B.row(4) << 1.0, -1.0;
  padded.C.leftCols(3) = ss.C;
  padded.C.col(3) << 0.5, 2.0;
  EXPECT_EQ(controllability_rank(padded), 4);
  EXPECT_EQ(observability_rank(padded), 4);
  EXPECT_FALSE(is_minimal(padded));

  const StateSpace reduced = minimal_realization(padded);
  EXPECT_EQ(reduced.states(), 3);
  EXPECT_TRUE(is_minimal(reduced));
  for (int i = 0; i < 20; ++i) {
    const Complex s = testing::random_point(rng);
    const ComplexMatrix g = eval_tf(padded, s);
    EXPECT_LT((eval_tf(reduced, s) - g).norm() / std::max(1.0, g.norm()), 1e-8);
  }
}

TEST(Minimality, CancelledFactorIsRemoved) {
  // (s+1)/(s+1) is realized with one state but is the constant 1.
  const StateSpace ss = siso_realization({{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_EQ(ss.states(), 1);
  EXPECT_FALSE(is_minimal(ss));
  EXPECT_EQ(minimal_realization(ss).states(), 0);
}

TEST(Minimality, RankToleranceFloorIsHonoured) {
  StateSpace ss{RealMatrix::Identity(2, 2) * -1.0, RealMatrix::Zero(2, 1), RealMatrix::Zero(1, 2),
                RealMatrix::Identity(1, 1)};
  ss.B << 1.0, 1e-6;
  ss.A(1, 1) = -2.0;
  ss.C << 1.0, 1.0;
  EXPECT_EQ(controllability_rank(ss), 2);
  EXPECT_EQ(controllability_rank(ss, RankTolerance{std::nullopt, 1e-3}), 1);
}

TEST(Rational, SisoRealizationMatchesHornerOracle) {
  Rng rng(10);
  const std::vector<RationalEntry> entries = {
      {{2.0, -3.0, 1.0}, {1.0, 0.5, 2.0, 1.0}},
      {{1.0, 1.0}, {1.0, 0.0}},
      {{4.0}, {2.0, 1.0}},
      {{3.0, 0.0, -1.0}, {1.5, 2.0, 0.25}},
      {{7.0}, {1.0}},
  };
  for (const RationalEntry& e : entries) {
    const StateSpace ss = siso_realization(e);
    for (int i = 0; i < 10; ++i) {
      const Complex s = testing::random_point(rng);
      const Complex expected = testing::eval_rational(e, s);
      EXPECT_LT(std::abs(eval_tf(ss, s)(0, 0) - expected), 1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(Rational, BlockDiagonalEvaluatesEntrywise) {
  Rng rng(11);
  const auto entries = reference_example::transfer_entries();
  const StateSpace ss = realize_diagonal(entries);
  EXPECT_EQ(ss.states(), 4);
  for (int i = 0; i < 20; ++i) {
    const Complex s = testing::random_point(rng);
    const ComplexMatrix g = eval_tf(ss, s);
    for (Index r = 0; r < 4; ++r) {
      for (Index c = 0; c < 4; ++c) {
        const Complex expected =
            r == c ? testing::eval_rational(entries[static_cast<std::size_t>(r)], s) : Complex(0.0);
        EXPECT_LT(std::abs(g(r, c) - expected), 1e-10);
      }
    }
  }
}

TEST(Rational, RejectsImproperOrDegenerate) {
  EXPECT_THROW(siso_realization({{1.0, 0.0, 0.0}, {1.0, 1.0}}), Error);
  EXPECT_THROW(siso_realization({{1.0}, {0.0, 1.0}}), Error);
  EXPECT_THROW(siso_realization({{1.0}, {}}), Error);
  EXPECT_THROW(block_diag(std::span<const StateSpace>{}), DimensionError);
}

TEST(Spectrum, ReferenceExample) {
  const SpectrumReport r = spectrum_report(realize_diagonal(reference_example::transfer_entries()));
  EXPECT_TRUE(match_multisets(r.poles, reference_example::poles(), 1e-9).matched);
  EXPECT_TRUE(match_multisets(r.zeros, reference_example::zeros(), 1e-9).matched);
  EXPECT_TRUE(r.mirror_symmetric);
  EXPECT_FALSE(r.spectrally_generic);
}

TEST(Spectrum, NonMirroredSystem) {
  // Poles -1, -2 and zeros -3, -4: not mirrored, and no pair sums to zero.
  const std::vector<RationalEntry> entries = {{{1.0, 3.0}, {1.0, 1.0}}, {{1.0, 4.0}, {1.0, 2.0}}};
  const SpectrumReport r = spectrum_report(realize_diagonal(entries));
  EXPECT_FALSE(r.mirror_symmetric);
  EXPECT_TRUE(r.spectrally_generic);
  EXPECT_NEAR(r.poles[0].real(), -2.0, 1e-12);
  EXPECT_NEAR(r.poles[1].real(), -1.0, 1e-12);
}

TEST(Spectrum, StaticSystemIsVacuous) {
  const SpectrumReport r = spectrum_report(StateSpace::static_gain(RealMatrix::Identity(2, 2)));
  EXPECT_TRUE(r.poles.empty());
  EXPECT_TRUE(r.zeros.empty());
  EXPECT_TRUE(r.mirror_symmetric);
  EXPECT_TRUE(r.spectrally_generic);
}

TEST(Multiset, GreedyPairing) {
  const std::vector<Complex> a = {1.0, Complex(0, 1), Complex(0, -1)};
  const std::vector<Complex> b = {Complex(0, -1), 1.0 + 1e-8, Complex(0, 1)};
  const MultisetMatch m = match_multisets(a, b);
  EXPECT_TRUE(m.matched);
  EXPECT_NEAR(m.max_distance, 1e-8, 1e-15);
  EXPECT_FALSE(match_multisets(a, std::vector<Complex>{1.0, 1.0, 1.0}).matched);
  EXPECT_FALSE(match_multisets(a, std::vector<Complex>{1.0}).matched);
}

}  // namespace
}  // namespace oqho
