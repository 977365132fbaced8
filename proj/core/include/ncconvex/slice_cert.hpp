#pragma once

// Slice reduction of an nc function to one variable.
//
//   Phi(xi)  = F(A kron I, X_1 kron xi, ..., X_g kron xi)
//   phi_v(z) = v^* F(A, zX) v = sum_i (v^* F_i(A, X) v) z^i
//
// A matrix convex, x-real entire F has every slice polynomial of degree at
// most two, so v^* F_i(A, X) v vanishes for i > 2. certify_degree_two samples
// (alpha in C_A, X, v), extracts these coefficients and reports whether any
// higher-order one survives.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncconvex/convexity.hpp"
#include "ncconvex/evaluation.hpp"

namespace ncconvex {

/// Residual above which coefficient extraction is rejected.
inline constexpr double kExtractionResidualLimit = 1e-6;
/// |c_i| above this (for i > 2) counts as a surviving higher-order term.
inline constexpr double kHighOrderZero = 1e-7;

/// F(A kron I_m, X kron xi) for an m x m matrix xi.
Matrix slice_phi(const NcFunction& f, const HermTuple& a, const HermTuple& x, const Matrix& xi);

/// (v^* kron I_m) Phi(xi) (v kron I_m), an m x m matrix.
Matrix slice_compression(const NcFunction& f, const HermTuple& a, const HermTuple& x, const Vector& v,
                         const Matrix& xi);

/// v^* F(A, zX) v with v normalized. Throws DomainError when |z| ||X|| is not
/// inside the radius of F.
Complex slice_scalar(const NcFunction& f, const HermTuple& a, const HermTuple& x, const Vector& v, Complex z);

enum class ExtractionPath { Auto, Exact, Fourier };

std::string to_string(ExtractionPath p);

struct SliceCoefficients {
  std::vector<Complex> coeffs;  // c_0 .. c_d
  ExtractionPath path = ExtractionPath::Exact;
  /// Max |phi(z) - sum c_i z^i| over a z-sample disjoint from the nodes.
  double residual = 0.0;
};

/// Exact path: c_i = v^* F_i(A, X) v from the explicit series. Fourier path:
/// inverse DFT of phi at the (d+1)-th roots of unity scaled by `radius`.
/// Auto picks Exact whenever the function carries a series.
SliceCoefficients extract_slice_coefficients(const NcFunction& f, const HermTuple& a, const HermTuple& x,
                                             const Vector& v, std::size_t degree_cap, double radius,
                                             ExtractionPath path = ExtractionPath::Auto);

enum class Verdict { ConsistentDegreeTwo, HypothesisFails, HigherOrderPresent };

std::string to_string(Verdict v);

struct CertifyOptions {
  double epsilon = 0.5;
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  std::size_t degree_cap = 8;
  /// Extraction radius in z; defaults to epsilon / 4.
  std::optional<double> radius;
  std::vector<std::size_t> multiplicities{1, 2};
  std::size_t convexity_trials = 200;
  ExtractionPath path = ExtractionPath::Auto;
};

struct HighOrderWitness {
  AlphaDescriptor descriptor;
  HermTuple alpha;
  HermTuple x;
  Vector v;
  std::size_t index = 0;
  Complex coeff;
  std::vector<Complex> coeffs;
};

struct CertificationReport {
  Verdict verdict = Verdict::ConsistentDegreeTwo;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double max_high_order_coeff = 0.0;
  double max_residual = 0.0;
  double radius = 0.0;
  ConvexityReport convexity;
  std::optional<HighOrderWitness> witness;
  std::vector<std::string> log;
};

CertificationReport certify_degree_two(const NcFunction& f, const HermTuple& a, const CertifyOptions& options);

struct SliceConvexityWitness {
  Matrix t_left, t_right;
  double t = 0.5;
  Eigen::VectorXd defect_eig;
};

struct SliceConvexityReport {
  bool pass = true;
  std::size_t trials = 0;
  double min_defect_eig = std::numeric_limits<double>::infinity();
  std::optional<SliceConvexityWitness> witness;
};

/// Matrix convexity of xi -> phi_v(xi) on Hermitian T with spectrum in
/// (1 - delta, 1 + delta), sizes 1..max_size.
SliceConvexityReport slice_convexity_check(const NcFunction& f, const HermTuple& a, const HermTuple& x,
                                           const Vector& v, double delta, Eigen::Index max_size, std::size_t trials,
                                           std::uint64_t seed);

}  // namespace ncconvex
