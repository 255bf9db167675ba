#include <gtest/gtest.h>

#include <cmath>

#include "specpert/analysis.hpp"
#include "specpert/errors.hpp"
#include "specpert/harness.hpp"

using namespace specpert;

TEST(Problem, FirstExampleReproduces) {
  const auto p = builtin_example(BuiltinExample::Case1);
  EXPECT_NEAR(p.gap(), 1.0, 1e-15);
  EXPECT_NEAR(p.norm_v(), std::sqrt(3.0) / 2.0, 1e-14);
  const auto ev = p.eig_B().values();
  const double expected[] = {-2.0, 0.0, 0.0, 2.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-12);
  EXPECT_EQ(p.spectral_case(), SpectralCase::CaseI);
  EXPECT_EQ(p.P().rank(), 2);
}

TEST(Problem, SecondExampleReproduces) {
  const auto p = builtin_example(BuiltinExample::Case2);
  const auto ev = p.eig_B().values();
  EXPECT_NEAR(ev[0], -2.0, 1e-12);
  EXPECT_NEAR(ev[1], 1.0, 1e-12);
  EXPECT_NEAR(ev[2], 1.0, 1e-12);
  EXPECT_EQ(p.spectral_case(), SpectralCase::CaseII);
}

TEST(Problem, RejectsInvalidSetups) {
  Eigen::VectorXd d(2);
  d << -1.0, 1.0;
  const auto A = HermitianMatrix::diagonal(d);
  ComplexMatrix diag_v = ComplexMatrix::Zero(2, 2);
  diag_v(0, 0) = 0.3;
  EXPECT_THROW(PerturbationProblem(A, HermitianMatrix(diag_v), SpectralSet::point(-1), SpectralSet::point(1)),
               ValidationError);
  EXPECT_THROW(PerturbationProblem(A, HermitianMatrix::zero(2), SpectralSet::point(-1), SpectralSet::point(2)),
               ValidationError);
  EXPECT_THROW(PerturbationProblem(A, HermitianMatrix::zero(3), SpectralSet::point(-1), SpectralSet::point(1)),
               ValidationError);
}

TEST(Problem, ReflectionAndSwapPreserveGeometry) {
  const auto p = builtin_example(BuiltinExample::Case2, 0.4);
  const auto r = p.reflected();
  EXPECT_NEAR(r.eig_B().min(), -p.eig_B().max(), 1e-12);
  const auto s = p.swapped();
  EXPECT_EQ(s.P().rank(), p.dim() - p.P().rank());
  EXPECT_DOUBLE_EQ(s.gap(), p.gap());
  EXPECT_NEAR(p.with_scaled_perturbation(2.0).norm_v(), 2.0 * p.norm_v(), 1e-14);
}

TEST(BoundCase1, HoldsBelowConstant) {
  const auto p = builtin_example(BuiltinExample::Case1, 0.45 / (std::sqrt(3.0) / 2.0));
  const auto r = bound_case1(p);
  EXPECT_TRUE(r.premise_satisfied);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.claimed_bound, 1.0);
  EXPECT_LE(r.measured_value, r.claimed_bound);
  EXPECT_LT(r.witness("max_identity_residual").value(), 1e-12);
}

TEST(BoundCase1, SharpExampleReachesOne) {
  const auto r = bound_case1(builtin_example(BuiltinExample::Case1));
  EXPECT_FALSE(r.premise_satisfied);
  EXPECT_NEAR(r.measured_value, 1.0, 1e-12);
  EXPECT_FALSE(r.violated());
}

TEST(BoundCase2, HoldsBelowSqrtTwo) {
  const auto r = bound_case2(builtin_example(BuiltinExample::Case2, 0.9));
  EXPECT_TRUE(r.premise_satisfied);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.witness("corner_left").value(), std::sqrt(0.5));
  EXPECT_LT(r.witness("corner_right").value(), std::sqrt(0.5));
}

TEST(BoundCase2, SwapsWhenOnlySecondHullSeparated) {
  const auto r = bound_case2(builtin_example(BuiltinExample::Case2, 0.5).swapped());
  EXPECT_TRUE(r.has_flag("roles_swapped"));
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(bound_case2(builtin_example(BuiltinExample::Case1)), CaseError);
}

TEST(BoundSubordinated, TwoLevelSystemMatchesHalfAngle) {
  // A = diag(0, 1) coupled by v: P - Q has norm sin(arctan(2v)/2).
  Eigen::VectorXd d(2);
  d << 0.0, 1.0;
  for (double v : {0.1, 1.0, 7.0}) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = v;
    const PerturbationProblem p(HermitianMatrix::diagonal(d), HermitianMatrix(m), SpectralSet::point(0.0),
                                SpectralSet::point(1.0));
    const auto r = bound_subordinated(p);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.measured_value, std::sin(0.5 * std::atan(2.0 * v)), 1e-12);
    EXPECT_EQ(r.witness("gap_eigenvalue_count").value(), 0.0);
    const auto reflected = bound_subordinated(p.swapped());
    EXPECT_TRUE(reflected.has_flag("reflected"));
    EXPECT_NEAR(reflected.measured_value, r.measured_value, 1e-12);
  }
  EXPECT_THROW(bound_subordinated(builtin_example(BuiltinExample::Case1)), CaseError);
}

TEST(TanTheta, MaximalIntervalAndBound) {
  const double S[] = {-1.0, 1.0};
  const auto w = maximal_open_interval(SpectralSet::point(0.0), SpectralSet::points(S));
  EXPECT_EQ(w.intervals()[0], (Interval{-1.0, 1.0}));
  EXPECT_TRUE(w.is_open());

  const auto r = tan_theta_bound(builtin_example(BuiltinExample::Case2, 0.3));
  EXPECT_TRUE(r.premise_satisfied);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.witness("sin_identity_residual").value(), 1e-10);
  EXPECT_LE(r.witness("norm_X").value(), r.witness("tan_bound").value() + 1e-12);
}

TEST(TanTheta, WindowMeetingSigmaIsRejected) {
  const auto p = builtin_example(BuiltinExample::Case2, 0.3);
  EXPECT_THROW(tan_theta_bound(p, SpectralSet::open({{-2.0, 0.5}})), DomainError);
}

TEST(PairInequality, ZeroWhenUnperturbed) {
  Eigen::VectorXd d(3);
  d << -1.0, 0.5, 2.0;
  const auto A = HermitianMatrix::diagonal(d);
  const auto r = verify_pair_inequality(A, A, SpectralSet::point(-1.0), SpectralSet::interval(0.5, 2.0));
  EXPECT_EQ(r.measured_value, 0.0);
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(verify_pair_inequality(A, A, SpectralSet::point(0.5), SpectralSet::interval(0.5, 2.0)),
               DomainError);
}

TEST(RunTheorem, DispatchesEveryId) {
  const auto p = builtin_example(BuiltinExample::Case2, 0.5);
  for (TheoremId id : kAllTheorems) {
    const auto r = run_theorem_or_skip(p, id);
    EXPECT_EQ(r.theorem, id);
    EXPECT_FALSE(r.violated()) << to_string(id);
  }
  EXPECT_TRUE(run_theorem_or_skip(p, TheoremId::Subordinated).has_flag("not_applicable"));
  EXPECT_EQ(theorem_from_string("tan_theta"), TheoremId::TanTheta);
  EXPECT_THROW(theorem_from_string("nope"), DomainError);
}
