#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "ncconvex/expr_parser.hpp"
#include "ncconvex/json_io.hpp"
#include "ncconvex/presets.hpp"
#include "ncconvex/slice_cert.hpp"

using namespace ncconvex;

namespace {

NcFunction poly(const char* expr, Signature sig) { return polynomial_function(expr, parse_polynomial(expr, sig)); }

HermTuple one_by_one(double value) { return HermTuple(1, MatrixTuple{Matrix::Constant(1, 1, value)}); }

// The same function with its series hidden, forcing the Fourier path.
NcFunction black_box(NcFunction f) {
  f.series.reset();
  return f;
}

}  // namespace

TEST(SlicePhi, ScalarXiIsPlainEvaluation) {
  const NcFunction f = poly("a1*x1*a1 + x1*a1*x1 + x1^2", {1, 1});
  Rng rng(1);
  const HermTuple a = sample_ball_point(1, 2, 1.0, rng, LetterClass::A);
  const HermTuple x = sample_ball_point(1, 2, 1.0, rng);
  EXPECT_LT(max_abs_entry(slice_phi(f, a, x, Matrix::Identity(1, 1)) - f(a, x)), 1e-14);
}

TEST(SlicePhi, IdentityXiIsShuffledDirectSum) {
  const NcFunction f = poly("a1*x1*a1 + x1*a1*x1 + x1^2", {1, 1});
  Rng rng(2);
  const HermTuple a = sample_ball_point(1, 3, 1.0, rng, LetterClass::A);
  const HermTuple x = sample_ball_point(1, 3, 1.0, rng);
  const Matrix lifted = slice_phi(f, a, x, Matrix::Identity(2, 2));
  const Matrix summed = f(direct_sum(a, a), direct_sum(x, x));
  // X kron I_2 equals P (I_2 kron X) P^T, and I_2 kron X is X + X.
  const auto perm = perfect_shuffle(2, 3);
  EXPECT_LT(max_abs_entry(perm * summed * perm.transpose() - lifted), 1e-12);
}

TEST(SlicePhi, UnitaryEquivarianceInXi) {
  const NcFunction f = poly("a1*x1*a1 + x1*a1*x1 + x1^2 + x1^3", {1, 1});
  Rng rng(3);
  const HermTuple a = sample_ball_point(1, 2, 1.0, rng, LetterClass::A);
  const HermTuple x = sample_ball_point(1, 2, 1.0, rng);
  for (int k = 0; k < 5; ++k) {
    const Matrix t = random_hermitian_with_spectrum(3, 0.8, 1.2, rng);
    const Matrix w = random_unitary(3, rng);
    const Matrix lhs = slice_phi(f, a, x, w.adjoint() * t * w);
    const Matrix lift = kron(Matrix::Identity(2, 2), w);
    const Matrix rhs = lift.adjoint() * slice_phi(f, a, x, t) * lift;
    EXPECT_LT(max_abs_entry(lhs - rhs), 1e-10);
  }
}

TEST(SliceScalar, SquareAtDiagonal) {
  const NcFunction f = poly("x1^2", {0, 1});
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  const HermTuple x(MatrixTuple{d});
  const Vector e1 = Vector::Unit(2, 0);
  for (const Complex z : {Complex(0.5, 0), Complex(-1.5, 0.25), Complex(0, 2)}) {
    EXPECT_LT(std::abs(slice_scalar(f, HermTuple(2, LetterClass::A), x, e1, z) - z * z), 1e-14);
  }
  EXPECT_EQ(slice_scalar(f, HermTuple(2, LetterClass::A), x, e1, 0.0), Complex(0.0));
}

TEST(SliceScalar, ConjugateSymmetryAndRealOnRealAxis) {
  const NcFunction f = poly("a1*x1*a1 + x1*a1*x1 + x1^2 - 3*x1^3 + a1", {1, 1});
  Rng rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const HermTuple a = sample_ball_point(1, 3, 1.0, rng, LetterClass::A);
    const HermTuple x = sample_ball_point(1, 3, 1.0, rng);
    const Vector v = random_unit_vector(3, rng);
    const Complex z(u(rng), u(rng));
    EXPECT_LT(std::abs(slice_scalar(f, a, x, v, std::conj(z)) - std::conj(slice_scalar(f, a, x, v, z))), 1e-12);
    EXPECT_LT(std::abs(slice_scalar(f, a, x, v, z.real()).imag()), 1e-9);
  }
}

TEST(SliceScalar, RadiusViolation) {
  const NcFunction f = *nc_preset("kraus-halfmass");
  EXPECT_THROW(slice_scalar(f, HermTuple(1, LetterClass::A), one_by_one(1.0), Vector::Ones(1), 2.5), DomainError);
}

TEST(Extraction, SquareMonomial) {
  const NcFunction f = poly("x1^2", {0, 1});
  Rng rng(5);
  const HermTuple x = sample_ball_point(1, 3, 1.0, rng);
  const Vector v = random_unit_vector(3, rng);
  const Complex expected = v.dot(x[0] * x[0] * v);
  for (const auto path : {ExtractionPath::Exact, ExtractionPath::Fourier}) {
    const SliceCoefficients c = extract_slice_coefficients(f, HermTuple(3, LetterClass::A), x, v, 8, 1.0, path);
    ASSERT_EQ(c.coeffs.size(), 9u);
    for (std::size_t i = 0; i < 9; ++i) {
      EXPECT_LT(std::abs(c.coeffs[i] - (i == 2 ? expected : Complex(0.0))), 1e-12) << i;
    }
  }
}

TEST(Extraction, KrausGeometricPattern) {
  const NcFunction f = *nc_preset("kraus-halfmass");
  const HermTuple a(1, LetterClass::A);
  const SliceCoefficients exact =
      extract_slice_coefficients(f, a, one_by_one(1.0), Vector::Ones(1), 8, 0.125, ExtractionPath::Exact);
  const SliceCoefficients dft =
      extract_slice_coefficients(black_box(f), a, one_by_one(1.0), Vector::Ones(1), 8, 0.125, ExtractionPath::Auto);
  EXPECT_EQ(dft.path, ExtractionPath::Fourier);
  for (std::size_t i = 0; i <= 8; ++i) {
    const double oracle = i < 2 ? 0.0 : std::pow(2.0, 2.0 - static_cast<double>(i));
    EXPECT_NEAR(exact.coeffs[i].real(), oracle, 1e-14) << i;
    EXPECT_NEAR(dft.coeffs[i].real(), oracle, 1e-6) << i;
  }
}

TEST(Extraction, IllConditionedFourierThrows) {
  // Degree 12 content aliased onto a degree-3 grid.
  const NcFunction f = black_box(poly("x1^12", {0, 1}));
  EXPECT_THROW(extract_slice_coefficients(f, HermTuple(1, LetterClass::A), one_by_one(1.0), Vector::Ones(1), 3, 1.0),
               ExtractionError);
}

TEST(Extraction, ExactAndFourierAgreeOnCorpus) {
  std::ifstream in(NCCONVEX_CORPUS);
  ASSERT_TRUE(in);
  Rng rng(6);
  for (const auto& entry : corpus_from_json(Json::parse(in))) {
    const NcPolynomial p = parse_polynomial(entry.expr, entry.signature);
    if (p.x_degree() > 8) continue;
    const NcFunction f = polynomial_function(entry.name, p);
    for (int k = 0; k < 3; ++k) {
      const HermTuple a = sample_ball_point(entry.signature.arity_a, 2, 1.0, rng, LetterClass::A);
      const HermTuple x = sample_ball_point(entry.signature.arity_x, 2, 1.0, rng);
      const Vector v = random_unit_vector(2, rng);
      const auto exact = extract_slice_coefficients(f, a, x, v, 8, 1.0, ExtractionPath::Exact);
      const auto dft = extract_slice_coefficients(f, a, x, v, 8, 1.0, ExtractionPath::Fourier);
      for (std::size_t i = 0; i <= 8; ++i) EXPECT_LT(std::abs(exact.coeffs[i] - dft.coeffs[i]), 1e-9) << entry.name;
    }
  }
}

TEST(Extraction, LinearInFunction) {
  constexpr Signature sig{1, 1};
  const NcPolynomial p = parse_polynomial("a1*x1*a1 + x1^3", sig), q = parse_polynomial("x1*a1*x1 - 2*x1^4", sig);
  Rng rng(7);
  const HermTuple a = sample_ball_point(1, 2, 1.0, rng, LetterClass::A);
  const HermTuple x = sample_ball_point(1, 2, 1.0, rng);
  const Vector v = random_unit_vector(2, rng);
  const auto cp = extract_slice_coefficients(polynomial_function("p", p), a, x, v, 6, 1.0, ExtractionPath::Exact);
  const auto cq = extract_slice_coefficients(polynomial_function("q", q), a, x, v, 6, 1.0, ExtractionPath::Exact);
  const auto cs = extract_slice_coefficients(polynomial_function("s", p + q), a, x, v, 6, 1.0, ExtractionPath::Exact);
  for (std::size_t i = 0; i <= 6; ++i) EXPECT_LT(std::abs(cs.coeffs[i] - cp.coeffs[i] - cq.coeffs[i]), 1e-14);
}

TEST(Certify, QuadraticPolynomialIsConsistent) {
  Rng rng(8);
  const NcFunction f = *nc_preset("quad-ax");
  const HermTuple a = sample_ball_point(1, 2, 1.0, rng, LetterClass::A);
  CertifyOptions options;
  options.samples = 20;
  options.seed = 3;
  const CertificationReport r = certify_degree_two(f, a, options);
  EXPECT_EQ(r.verdict, Verdict::ConsistentDegreeTwo);
  EXPECT_LE(r.max_high_order_coeff, 1e-9);
  EXPECT_EQ(r.samples, 20u);
  EXPECT_EQ(to_string(r.verdict), "CONSISTENT_DEGREE_<=2");
}

TEST(Certify, QuarticHypothesisFails) {
  CertifyOptions options;
  options.samples = 10;
  options.seed = 4;
  options.epsilon = 1.0;
  options.convexity_trials = 500;
  const CertificationReport r = certify_degree_two(*nc_preset("quartic"), HermTuple(2, LetterClass::A), options);
  EXPECT_EQ(r.verdict, Verdict::HypothesisFails);
  ASSERT_TRUE(r.convexity.witness.has_value());
}

TEST(Certify, KrausLiftHasHigherOrder) {
  CertifyOptions options;
  options.samples = 10;
  options.seed = 5;
  const CertificationReport r = certify_degree_two(*nc_preset("kraus-halfmass"), HermTuple(1, LetterClass::A), options);
  EXPECT_EQ(r.verdict, Verdict::HigherOrderPresent);
  EXPECT_TRUE(r.convexity.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->index, 2u);
}

TEST(SliceConvexity, SquareTransfers) {
  const NcFunction f = poly("x1^2", {0, 1});
  Rng rng(9);
  const HermTuple x = sample_ball_point(1, 2, 0.25, rng);
  const Vector v = random_unit_vector(2, rng);
  const SliceConvexityReport r = slice_convexity_check(f, HermTuple(2, LetterClass::A), x, v, 0.2, 3, 100, 10);
  EXPECT_TRUE(r.pass) << r.min_defect_eig;
}

TEST(SliceConvexity, TensorNormBound) {
  Rng rng(11);
  const double delta = 0.2;
  for (int k = 0; k < 50; ++k) {
    const HermTuple x = sample_ball_point(2, 2, 0.5, rng);
    const Matrix t = random_hermitian_with_spectrum(3, 1 - delta, 1 + delta, rng);
    EXPECT_LT(tuple_norm(kron(x, t)), (1 + delta) * tuple_norm(x) + 1e-12);
  }
}
