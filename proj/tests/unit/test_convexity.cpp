#include <gtest/gtest.h>

#include "ncconvex/convexity.hpp"
#include "ncconvex/expr_parser.hpp"
#include "ncconvex/presets.hpp"

using namespace ncconvex;

namespace {

NcFunction poly(const char* expr, Signature sig) { return polynomial_function(expr, parse_polynomial(expr, sig)); }

HermTuple random_a(std::size_t arity, Eigen::Index n, Rng& rng) {
  return sample_ball_point(arity, n, 1.0, rng, LetterClass::A);
}

}  // namespace

TEST(ConvexityAtA, SquarePassesAtEverySize) {
  const NcFunction f = poly("x1^2", {0, 1});
  for (Eigen::Index n = 1; n <= 5; ++n) {
    const ConvexityReport r = test_convexity_at_A(f, HermTuple(n, LetterClass::A), 1.0, 100, 10 + n);
    EXPECT_TRUE(r.pass) << "size " << n << ": " << r.min_defect_eig;
    EXPECT_TRUE(r.hermitian_ok);
    EXPECT_FALSE(r.witness.has_value());
  }
}

TEST(ConvexityAtA, QuarticFailsWithShrunkWitness) {
  const NcFunction f = poly("x1^4", {0, 1});
  const ConvexityReport r = test_convexity_at_A(f, HermTuple(2, LetterClass::A), 1.0, 1000, 7);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.genuine_violation());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LE(r.witness->shrink, 1.0);
  // Standalone recomputation through the public evaluator.
  const double lowest = verify_witness(f, *r.witness);
  EXPECT_LT(lowest, kWitnessThreshold);
  EXPECT_NEAR(lowest, r.witness->defect_eig.minCoeff(), 1e-10);
}

TEST(ConvexityAtA, AffineDefectIsZero) {
  const NcFunction f = poly("a1*x1 + x1*a1 - 2*x1 + a1", {1, 1});
  Rng rng(1);
  const HermTuple a = random_a(1, 3, rng);
  const ConvexityReport r = test_convexity_at_A(f, a, 1.0, 50, 2);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.min_defect_eig, -1e-12);
}

TEST(ConvexityAtA, NonHermitianFunctionIsFlagged) {
  const NcFunction f = poly("i*x1", {0, 1});
  const ConvexityReport r = test_convexity_at_A(f, HermTuple(2, LetterClass::A), 1.0, 10, 3);
  EXPECT_FALSE(r.hermitian_ok);
  EXPECT_FALSE(r.pass);
}

TEST(ConvexityAtA, DefectIsUnitarilyInvariant) {
  const NcFunction f = poly("a1*x1*a1 + x1*a1*x1 + x1^2 + x1^4", {1, 1});
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const HermTuple a = random_a(1, 3, rng);
    const HermTuple x = sample_ball_point(1, 3, 0.5, rng), y = sample_ball_point(1, 3, 0.5, rng);
    const Matrix u = random_unitary(3, rng);
    const double plain = min_eigenvalue(convexity_defect(f, a, x, y, 0.4));
    const double rotated =
        min_eigenvalue(convexity_defect(f, conjugate(a, u), conjugate(x, u), conjugate(y, u), 0.4));
    EXPECT_NEAR(plain, rotated, 1e-9);
  }
}

TEST(ConvexityAtCA, SquarePassesAtAllLevels) {
  Rng rng(5);
  const NcFunction f = poly("x1^2", {0, 1});
  const ConvexityReport r = test_convexity_at_CA(f, HermTuple(2, LetterClass::A), 1.0, {1, 2, 3}, 200, 6);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.levels.size(), 3u);
  EXPECT_EQ(r.trials, 600u);
}

TEST(ConvexityAtCA, QuarticInXFailsByLevelTwo) {
  Rng rng(6);
  const NcFunction f = poly("a1*x1^4*a1 + x1^4", {1, 1});
  const HermTuple a = random_a(1, 1, rng);
  const ConvexityReport r = test_convexity_at_CA(f, a, 1.0, {1, 2}, 500, 8);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LE(r.witness->descriptor.m, 2u);
  EXPECT_LT(verify_witness(f, *r.witness), kWitnessThreshold);
}

TEST(ConvexityAtCA, IdentityLevelOneReducesToAtA) {
  Rng rng(7);
  const NcFunction f = poly("a1*x1*a1 + x1*a1*x1 + x1^2", {1, 1});
  const HermTuple a = random_a(1, 2, rng);
  const ConvexityReport ca = test_convexity_at_CA(f, a, 0.5, {1}, 60, 9, UnitaryChoice::Identity);
  const ConvexityReport at = test_convexity_at_A(f, a, 0.5, 60, level_seed(9, 0));
  EXPECT_EQ(ca.min_defect_eig, at.min_defect_eig);
  EXPECT_EQ(ca.pass, at.pass);
}

TEST(ConvexityAtCA, KrausLiftMatchesOneVariableTest) {
  // Same sampled pair through the nc lift and through the spectral calculus.
  const NcFunction lift = *nc_preset("kraus-halfmass");
  const ScalarFn scalar = *scalar_preset("kraus-halfmass");
  Rng rng(10);
  for (int k = 0; k < 10; ++k) {
    const HermTuple x = sample_ball_point(1, 3, 0.9, rng), y = sample_ball_point(1, 3, 0.9, rng);
    const Matrix nc = convexity_defect(lift, HermTuple(3, LetterClass::A), x, y, 0.3);
    const Matrix one = convexity_defect(scalar, x[0], y[0], 0.3);
    EXPECT_LT(max_abs_entry(nc - one), 1e-10);
  }
  const ConvexityReport r = test_convexity_at_CA(lift, HermTuple(2, LetterClass::A), 0.9, {1, 2}, 200, 11);
  EXPECT_TRUE(r.pass) << r.min_defect_eig;
}

TEST(ConvexityAtCA, Deterministic) {
  Rng rng(12);
  const NcFunction f = poly("x1^4 + a1*x1*a1", {1, 1});
  const HermTuple a = random_a(1, 2, rng);
  const ConvexityReport r1 = test_convexity_at_CA(f, a, 0.5, {1, 2}, 100, 13);
  const ConvexityReport r2 = test_convexity_at_CA(f, a, 0.5, {1, 2}, 100, 13);
  EXPECT_EQ(r1.min_defect_eig, r2.min_defect_eig);
  EXPECT_EQ(r1.pass, r2.pass);
}
