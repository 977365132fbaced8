#include <gtest/gtest.h>

#include <algorithm>

#include "ncconvex/errors.hpp"
#include "ncconvex/matrix_domain.hpp"

using namespace ncconvex;

namespace {

HermTuple random_tuple(std::size_t arity, Eigen::Index n, Rng& rng) {
  MatrixTuple e;
  for (std::size_t i = 0; i < arity; ++i) e.push_back(gaussian_hermitian(n, rng));
  return HermTuple(n, std::move(e));
}

// Sorted eigenvalues of every entry, concatenated.
std::vector<double> entry_spectra(const HermTuple& t) {
  std::vector<double> out;
  for (const auto& m : t.entries()) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(m);
    out.insert(out.end(), ev.data(), ev.data() + ev.size());
  }
  return out;
}

void expect_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol);
}

}  // namespace

TEST(HermTuple, RejectsNonHermitianAndMisshapen) {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_THROW(HermTuple(MatrixTuple{m}), DomainError);
  EXPECT_THROW(HermTuple(MatrixTuple{Matrix::Identity(2, 2), Matrix::Identity(3, 3)}), ShapeError);
}

TEST(TupleNorm, Examples) {
  EXPECT_EQ(tuple_norm(HermTuple(3, MatrixTuple{Matrix::Zero(3, 3), Matrix::Zero(3, 3)})), 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -1;
  EXPECT_NEAR(tuple_norm(HermTuple(MatrixTuple{d})), 3.0, 1e-14);

  // Oracle: dense eigensolve of sum X_i^2 done here.
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const HermTuple x = random_tuple(3, 4, rng);
    Matrix s = Matrix::Zero(4, 4);
    for (const auto& e : x.entries()) s += e * e.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    EXPECT_NEAR(tuple_norm(x), std::sqrt(es.eigenvalues().maxCoeff()), 1e-10);
  }
}

TEST(TupleNorm, NormAxioms) {
  Rng rng(2);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 50; ++k) {
    const HermTuple x = random_tuple(2, 3, rng), y = random_tuple(2, 3, rng);
    const double c = gauss(rng);
    EXPECT_NEAR(tuple_norm(x.scaled(c)), std::abs(c) * tuple_norm(x), 1e-10);
    EXPECT_LE(tuple_norm(x + y), tuple_norm(x) + tuple_norm(y) + 1e-10);
  }
}

TEST(DirectSum, PadsAndTakesMaxNorm) {
  Rng rng(3);
  const HermTuple z = random_tuple(2, 2, rng);
  const HermTuple zero(1, MatrixTuple{Matrix::Zero(1, 1), Matrix::Zero(1, 1)});
  const HermTuple padded = direct_sum(z, zero);
  ASSERT_EQ(padded.size(), 3);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(padded[i].topLeftCorner(2, 2), z[i]);
    EXPECT_EQ(padded[i].row(2).cwiseAbs().sum(), 0.0);
    EXPECT_EQ(padded[i].col(2).cwiseAbs().sum(), 0.0);
  }
  for (int k = 0; k < 20; ++k) {
    const HermTuple a = random_tuple(2, 2, rng), b = random_tuple(2, 3, rng);
    EXPECT_NEAR(tuple_norm(direct_sum(a, b)), std::max(tuple_norm(a), tuple_norm(b)), 1e-10);
    expect_close(entry_spectra(direct_sum(a, b)), entry_spectra(direct_sum(b, a)), 1e-10);
  }
  EXPECT_THROW(direct_sum(random_tuple(1, 2, rng), random_tuple(2, 2, rng)), ShapeError);
}

TEST(DirectSum, SwapPermutation) {
  Rng rng(4);
  const HermTuple a = random_tuple(1, 2, rng), b = random_tuple(1, 3, rng);
  Eigen::PermutationMatrix<Eigen::Dynamic> p(5);
  for (int i = 0; i < 5; ++i) p.indices()[i] = (i + 3) % 5;
  const Matrix lhs = p * direct_sum(a, b)[0] * p.transpose();
  const Matrix rhs = direct_sum(b, a)[0];
  EXPECT_LT(max_abs_entry(lhs - rhs), 1e-14);
}

TEST(Conjugate, UnitaryInvarianceAndInverse) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const HermTuple z = random_tuple(2, 4, rng);
    const Matrix u = random_unitary(4, rng);
    EXPECT_LT(unitarity_defect(u), 1e-12);
    const HermTuple c = conjugate(z, u);
    EXPECT_NEAR(tuple_norm(c), tuple_norm(z), 1e-10);
    const HermTuple back = conjugate(c, u.adjoint());
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(max_abs_entry(back[i] - z[i]), 1e-10);
  }
  const HermTuple z = random_tuple(1, 2, rng);
  EXPECT_EQ(conjugate(z, Matrix::Identity(2, 2))[0], z[0]);
  EXPECT_THROW(conjugate(z, 2.0 * Matrix::Identity(2, 2)), PreconditionError);
}

TEST(Kron, PerfectShuffle) {
  Rng rng(6);
  for (const auto [p, q] : {std::pair<Eigen::Index, Eigen::Index>{2, 3}, {3, 2}, {4, 1}, {2, 2}}) {
    const Matrix l = gaussian_hermitian(p, rng), r = gaussian_hermitian(q, rng);
    const auto perm = perfect_shuffle(p, q);
    EXPECT_LT(max_abs_entry(perm * kron(l, r) * perm.transpose() - kron(r, l)), 1e-13);
  }
}

TEST(CASet, IdentityMultiplicityOneIsA) {
  Rng rng(7);
  const HermTuple a = random_tuple(2, 2, rng);
  const CASetElement e = ca_element(a, 1, UnitaryChoice::Identity, rng);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(e.alpha()[i], a[i]);
}

TEST(CASet, ShuffleAndSpectra) {
  Rng rng(8);
  const HermTuple a = random_tuple(2, 2, rng);
  const std::size_t m = 3;
  const CASetElement plain = ca_element(a, m, UnitaryChoice::Identity, rng);
  const auto perm = perfect_shuffle(3, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const Matrix shuffled = perm * plain.alpha()[i] * perm.transpose();
    EXPECT_LT(max_abs_entry(shuffled - kron(a[i], Matrix::Identity(3, 3))), 1e-13);
  }

  const CASetElement rotated = ca_element(a, m, UnitaryChoice::Random, rng);
  EXPECT_EQ(rotated.alpha().size(), 6);
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<double> expected;
    const Eigen::VectorXd ev = hermitian_eigenvalues(a[i]);
    for (std::size_t k = 0; k < m; ++k) expected.insert(expected.end(), ev.data(), ev.data() + ev.size());
    std::sort(expected.begin(), expected.end());
    const Eigen::VectorXd got = hermitian_eigenvalues(rotated.alpha()[i]);
    expect_close(std::vector<double>(got.data(), got.data() + got.size()), expected, 1e-10);
  }
}

TEST(CASet, DirectSumClosure) {
  Rng rng(9);
  const HermTuple a = random_tuple(1, 2, rng);
  const CASetElement e1 = ca_element(a, 1, UnitaryChoice::Random, rng);
  const CASetElement e2 = ca_element(a, 2, UnitaryChoice::Random, rng);
  const CASetElement e3 = ca_element(a, 3, UnitaryChoice::Identity, rng);
  expect_close(entry_spectra(direct_sum(e1.alpha(), e2.alpha())), entry_spectra(e3.alpha()), 1e-10);
}

TEST(SampleXBall, ContractDeterminismAndCoverage) {
  const Signature sig{0, 2};
  const auto first = sample_x_ball(sig, 3, 0.5, 1000, 42);
  const auto second = sample_x_ball(sig, 3, 0.5, 1000, 42);
  ASSERT_EQ(first.size(), 1000u);
  double lo = 1.0, hi = 0.0;
  for (std::size_t k = 0; k < first.size(); ++k) {
    const double r = tuple_norm(first[k]);
    EXPECT_LT(r, 0.5);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(first[k][i], second[k][i]);
  }
  EXPECT_LT(lo, 0.05 * 0.5);
  EXPECT_GT(hi, 0.95 * 0.5);
}

TEST(RandomHermitian, PrescribedSpectrumInterval) {
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(random_hermitian_with_spectrum(4, -0.9, 0.9, rng));
    EXPECT_GT(ev.minCoeff(), -0.9);
    EXPECT_LT(ev.maxCoeff(), 0.9);
  }
}

TEST(Seeds, DerivedStreamsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}
