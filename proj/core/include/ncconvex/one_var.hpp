#pragma once

// One-variable matrix function calculus: f(B) by the spectral theorem, the
// Kraus form of matrix convex functions, Pick functions, and sampling tests
// for operator monotonicity and matrix convexity.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ncconvex/matrix_domain.hpp"

namespace ncconvex {

/// PSD acceptance threshold for minimum eigenvalues.
inline constexpr double kPsdTolerance = 1e-8;
/// A violation must be below this to count as a genuine witness.
inline constexpr double kWitnessThreshold = -1e-6;

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t > lo && t < hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

struct ScalarFn {
  std::string name;
  std::function<double(double)> f;
  std::optional<std::function<double(double)>> df;
  std::optional<std::function<double(double)>> d2f;
  Interval domain;

  double operator()(double t) const { return f(t); }
};

/// f'(t): analytic when available, otherwise Richardson-refined central
/// differences (one-sided near the domain boundary).
double derivative(const ScalarFn& fn, double t, double step = 1e-6);

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure point_mass(double location, double weight = 1.0) {
    return DiscreteMeasure({{location, weight}});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_weight() const;
  /// Atoms in [-1, 1] and total mass 1 within 1e-12.
  bool is_probability_on_unit_interval() const;

 private:
  std::vector<Atom> atoms_;
};

/// U^* diag(f(lambda_i)) U. Throws DomainError naming the first eigenvalue
/// outside the domain of f.
Matrix matrix_apply(const ScalarFn& fn, const Matrix& b);

/// Minimum of |1 - lambda t| over atoms lambda and spectrum points t below
/// which kraus_eval refuses to evaluate.
inline constexpr double kPoleGate = 1e-8;

/// f0 I + f1 B + (f2/2) sum_k w_k B^2 (I - lambda_k B)^{-1}.
Matrix kraus_eval(double f0, double f1, double f2, const DiscreteMeasure& mu, const Matrix& b);

/// The scalar function with the same Kraus data.
ScalarFn kraus_function(double f0, double f1, double f2, const DiscreteMeasure& mu);

/// alpha z + beta + sum_k w_k (1/(lambda_k - z) - lambda_k/(lambda_k^2 + 1)).
Complex pick_eval(double alpha, double beta, const DiscreteMeasure& mu, Complex z);

/// t -> (f(t) - f(0)) / t with the value f'(0) at t = 0.
ScalarFn g_transform(const ScalarFn& fn);

struct MonotoneWitness {
  std::vector<double> points;
  Eigen::MatrixXd loewner;
  double min_eig = 0.0;
};

struct MonotoneReport {
  bool pass = true;
  double min_eig = std::numeric_limits<double>::infinity();
  std::size_t trials = 0;
  std::optional<MonotoneWitness> witness;
};

/// Divided-difference (Loewner) matrix at the given distinct points.
Eigen::MatrixXd loewner_matrix(const ScalarFn& fn, const std::vector<double>& points);

MonotoneReport loewner_monotone_test(const ScalarFn& fn, Interval interval, std::size_t points_per_trial,
                                     std::size_t trials, std::uint64_t seed);

struct ConvexityWitness1 {
  Matrix a, b;
  double t = 0.5;
  Eigen::VectorXd defect_eig;
};

struct ConvexityReport1 {
  bool pass = true;
  double min_eig = std::numeric_limits<double>::infinity();
  std::size_t trials = 0;
  std::optional<ConvexityWitness1> witness;
};

/// t f(A) + (1-t) f(B) - f(tA + (1-t)B), symmetrized.
Matrix convexity_defect(const ScalarFn& fn, const Matrix& a, const Matrix& b, double t);

/// Random Hermitian pairs with spectra inside `interval` (which must be
/// finite), t = 1/2 on even trials and uniform on odd ones.
ConvexityReport1 convexity_test_1var(const ScalarFn& fn, Interval interval, Eigen::Index size, std::size_t trials,
                                     std::uint64_t seed);

}  // namespace ncconvex
