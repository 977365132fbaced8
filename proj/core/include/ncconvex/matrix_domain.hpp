#pragma once

// Hermitian matrix tuples: the points at which nc functions are evaluated.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ncconvex/free_algebra.hpp"

namespace ncconvex {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
/// General (not necessarily Hermitian) square matrices of a shared size.
using MatrixTuple = std::vector<Matrix>;

/// Ingest tolerance for Hermiticity, max-entry norm of M - M*.
inline constexpr double kHermitianTolerance = 1e-12;

/// Deterministic engine used throughout; trials derive their own seeds.
using Rng = std::mt19937_64;

/// splitmix64 mixing of (seed, stream) into a fresh, well separated seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class HermTuple {
 public:
  /// Empty tuple of size n; the size still matters (it fixes the level).
  explicit HermTuple(Eigen::Index n = 0, LetterClass cls = LetterClass::X);
  /// Symmetrizes each entry after checking it is Hermitian within tolerance.
  HermTuple(MatrixTuple entries, LetterClass cls = LetterClass::X, double tolerance = kHermitianTolerance);
  HermTuple(Eigen::Index n, MatrixTuple entries, LetterClass cls = LetterClass::X,
            double tolerance = kHermitianTolerance);

  Eigen::Index size() const { return n_; }
  std::size_t arity() const { return entries_.size(); }
  LetterClass letter_class() const { return cls_; }
  const MatrixTuple& entries() const { return entries_; }
  const Matrix& operator[](std::size_t i) const { return entries_[i]; }

  HermTuple scaled(double c) const;
  friend HermTuple operator+(const HermTuple& l, const HermTuple& r);
  friend HermTuple operator-(const HermTuple& l, const HermTuple& r);

 private:
  Eigen::Index n_ = 0;
  LetterClass cls_ = LetterClass::X;
  MatrixTuple entries_;
};

/// Largest eigenvalue of sum_i X_i X_i^*, square-rooted.
double tuple_norm(const HermTuple& x);
double tuple_norm(const MatrixTuple& x);

HermTuple direct_sum(const HermTuple& z, const HermTuple& w);
Matrix direct_sum(const Matrix& l, const Matrix& r);

/// Max-entry deviation of U^* U from the identity.
double unitarity_defect(const Matrix& u);

/// (U^* Z_1 U, ..., U^* Z_g U). Throws PreconditionError if U is not unitary
/// within `tolerance`.
HermTuple conjugate(const HermTuple& z, const Matrix& u, double tolerance = 1e-10);

Matrix kron(const Matrix& l, const Matrix& r);
HermTuple kron(const HermTuple& z, const Matrix& right);

/// Permutation P with P (L kron R) P^T = R kron L for L of size p, R of size q.
Eigen::PermutationMatrix<Eigen::Dynamic> perfect_shuffle(Eigen::Index p, Eigen::Index q);

/// QR of a complex Ginibre sample with the phases of R's diagonal folded into Q.
Matrix random_unitary(Eigen::Index n, Rng& rng);

/// Random Hermitian matrix with eigenvalues drawn uniformly from (lo, hi).
Matrix random_hermitian_with_spectrum(Eigen::Index n, double lo, double hi, Rng& rng);

/// Unnormalized GUE-style sample (Gaussian Hermitian entries).
Matrix gaussian_hermitian(Eigen::Index n, Rng& rng);

/// Random unit vector in C^n.
Vector random_unit_vector(Eigen::Index n, Rng& rng);

/// One Hermitian tuple with tuple_norm drawn uniformly from (0, radius).
HermTuple sample_ball_point(std::size_t arity, Eigen::Index n, double radius, Rng& rng,
                            LetterClass cls = LetterClass::X);

/// `count` independent points of the x-ball of radius epsilon at level n.
std::vector<HermTuple> sample_x_ball(const Signature& sig, Eigen::Index n, double epsilon, std::size_t count,
                                     std::uint64_t seed);

/// Element U^*(I_m kron A)U of the smallest nc set generated by A.
class CASetElement {
 public:
  CASetElement(HermTuple base, std::size_t multiplicity, Matrix unitary);

  const HermTuple& base() const { return base_; }
  std::size_t multiplicity() const { return m_; }
  Eigen::Index kappa() const { return base_.size(); }
  const Matrix& unitary() const { return u_; }
  /// The realized tuple alpha.
  const HermTuple& alpha() const { return alpha_; }

 private:
  HermTuple base_;
  std::size_t m_;
  Matrix u_;
  HermTuple alpha_;
};

enum class UnitaryChoice { Identity, Random };

CASetElement ca_element(const HermTuple& a, std::size_t m, UnitaryChoice choice, Rng& rng);
CASetElement ca_element(const HermTuple& a, std::size_t m, const Matrix& unitary);

/// Sorted eigenvalues of a Hermitian matrix (symmetrized first).
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& m);
double max_abs_entry(const Matrix& m);
double hermitian_defect(const Matrix& m);

}  // namespace ncconvex
