#pragma once

// Sampling falsifier for matrix convexity in x of F(a, x) on x-balls around
// (A, 0) and around every level of C_A. A failing report carries a witness
// that re-verifies by direct evaluation; a passing report is evidence only.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ncconvex/errors.hpp"
#include "ncconvex/evaluation.hpp"
#include "ncconvex/one_var.hpp"

namespace ncconvex {

/// Max-entry tolerance for "F(A, X) is Hermitian".
inline constexpr double kEvaluationHermitianTolerance = 1e-9;

struct AlphaDescriptor {
  std::size_t m = 1;
  Eigen::Index kappa = 0;
};

struct ConvexityWitness {
  AlphaDescriptor descriptor;
  HermTuple alpha;
  HermTuple x;
  HermTuple y;
  double t = 0.5;
  Eigen::VectorXd defect_eig;
  /// Factor applied to (X - Y) by shrinking (1 = as sampled).
  double shrink = 1.0;
};

struct ConvexityReport {
  bool pass = true;
  std::size_t trials = 0;
  double min_defect_eig = std::numeric_limits<double>::infinity();
  bool hermitian_ok = true;
  double epsilon = 0.0;
  std::vector<AlphaDescriptor> levels;
  std::optional<ConvexityWitness> witness;

  bool genuine_violation() const { return min_defect_eig < kWitnessThreshold; }
};

/// Evaluation failed at a sampled point; the sample is attached.
class SampleError : public Error {
 public:
  SampleError(const std::string& what, std::size_t trial, HermTuple alpha, HermTuple x)
      : Error("trial " + std::to_string(trial) + ": " + what), trial_(trial), alpha_(std::move(alpha)), x_(std::move(x)) {}
  std::size_t trial() const { return trial_; }
  const HermTuple& alpha() const { return alpha_; }
  const HermTuple& x() const { return x_; }

 private:
  std::size_t trial_;
  HermTuple alpha_;
  HermTuple x_;
};

/// t F(A,X) + (1-t) F(A,Y) - F(A, tX + (1-t)Y), symmetrized.
Matrix convexity_defect(const NcFunction& f, const HermTuple& a, const HermTuple& x, const HermTuple& y, double t);

ConvexityReport test_convexity_at_A(const NcFunction& f, const HermTuple& a, double epsilon, std::size_t trials,
                                    std::uint64_t seed, bool shrink = true);

/// Runs test_convexity_at_A at alpha = U^*(I_m kron A)U for each multiplicity,
/// all with the same epsilon, and merges the reports.
ConvexityReport test_convexity_at_CA(const NcFunction& f, const HermTuple& a, double epsilon,
                                     const std::vector<std::size_t>& multiplicities, std::size_t trials,
                                     std::uint64_t seed, UnitaryChoice unitaries = UnitaryChoice::Random,
                                     bool shrink = true);

/// Seed used for the trials at position `level` of the multiplicity list.
std::uint64_t level_seed(std::uint64_t seed, std::size_t level);

/// Scale (X - Y) about the midpoint towards 0 while the defect stays below
/// the witness threshold.
ConvexityWitness shrink_witness(const NcFunction& f, ConvexityWitness w);

/// Recomputes the defect at a witness; returns its minimum eigenvalue.
double verify_witness(const NcFunction& f, const ConvexityWitness& w);

}  // namespace ncconvex
