#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "ncconvex/free_algebra.hpp"
#include "ncconvex/matrix_domain.hpp"

namespace ncconvex {

/// Z^w for a word, left-to-right products; empty word gives I_n.
Matrix eval_word(const Word& w, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n);

/// p(Z) = sum_w p_w Z^w. Tuples may be any complex matrices of size n, which
/// is how slices continue F to complex multiples of X.
Matrix eval_poly(const NcPolynomial& p, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n);
Matrix eval_poly(const NcPolynomial& p, const HermTuple& a, const HermTuple& x);

/// Block matrix [p_ij(Z)] of size (rows*n) x (cols*n).
Matrix eval_poly(const MatrixNcPolynomial& p, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n);
Matrix eval_poly(const MatrixNcPolynomial& p, const HermTuple& a, const HermTuple& x);

struct SeriesEvaluation {
  Matrix value;
  /// Max-entry norm of the last part added; a convergence proxy.
  double last_increment = 0.0;
};

/// Partial sum of parts 0..up_to. Throws DomainError outside the declared radius.
SeriesEvaluation eval_series(const NcPowerSeries& f, const HermTuple& a, const HermTuple& x, std::size_t up_to);

/// A matrix-valued function of (a, x) evaluated on same-size tuples.
/// `evaluate` must accept complex (non-Hermitian) x when the function is to
/// be probed along complex slices.
struct NcFunction {
  using Evaluator = std::function<Matrix(const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n)>;

  std::string name;
  Signature signature;
  Eigen::Index block_rows = 1;
  Eigen::Index block_cols = 1;
  double radius = std::numeric_limits<double>::infinity();
  Evaluator evaluate;
  /// Explicit x-power series, when known; enables exact slice coefficients.
  std::optional<NcPowerSeries> series;

  Matrix operator()(const HermTuple& a, const HermTuple& x) const;
  Matrix operator()(const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) const;
};

NcFunction polynomial_function(std::string name, const MatrixNcPolynomial& p);
NcFunction polynomial_function(std::string name, const NcPolynomial& p);
/// Evaluates the truncated series; radius comes from the series.
NcFunction series_function(std::string name, const NcPowerSeries& s);

struct AxiomOptions {
  std::size_t samples = 100;
  Eigen::Index max_size = 4;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  /// Sample tuples lie in this ball (clipped to half the function's radius).
  double sample_radius = 0.9;
};

struct AxiomCounterexample {
  HermTuple z_a, z_x;
  HermTuple w_a, w_x;  // second summand (direct-sum check)
  Matrix unitary;      // conjugation check
  double deviation = 0.0;
};

struct AxiomReport {
  bool pass = true;
  std::size_t samples = 0;
  double max_direct_sum_deviation = 0.0;
  double max_unitary_deviation = 0.0;
  std::optional<AxiomCounterexample> direct_sum_witness;
  std::optional<AxiomCounterexample> unitary_witness;
};

/// Max-entry deviation of F(Z + W) from F(Z) + F(W) (blockwise direct sums).
double direct_sum_deviation(const NcFunction& f, const HermTuple& z_a, const HermTuple& z_x, const HermTuple& w_a,
                            const HermTuple& w_x);
/// Max-entry deviation of F(U*ZU) from (I kron U)* F(Z) (I kron U).
double unitary_deviation(const NcFunction& f, const HermTuple& z_a, const HermTuple& z_x, const Matrix& u);

AxiomReport check_nc_function_axioms(const NcFunction& f, const AxiomOptions& options);

}  // namespace ncconvex
