#include "ncconvex/slice_cert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncconvex/errors.hpp"

namespace ncconvex {

namespace {

Vector normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0)) throw DomainError("slice vector must be nonzero");
  return v / norm;
}

void require_square_blocks(const NcFunction& f) {
  if (f.block_rows != f.block_cols) throw ShapeError("slices need a square matrix-valued function");
}

void require_vector_size(const NcFunction& f, const HermTuple& x, const Vector& v) {
  if (v.size() != f.block_rows * x.size()) {
    throw ShapeError("slice vector has length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(f.block_rows * x.size()));
  }
}

MatrixTuple scaled_entries(const HermTuple& x, Complex z) {
  MatrixTuple out;
  out.reserve(x.arity());
  for (const auto& m : x.entries()) out.push_back(z * m);
  return out;
}

Complex compress(const Vector& v, const Matrix& m) { return v.dot(m * v); }  // v^* M v

}  // namespace

std::string to_string(ExtractionPath p) {
  switch (p) {
    case ExtractionPath::Auto: return "auto";
    case ExtractionPath::Exact: return "exact";
    case ExtractionPath::Fourier: return "fourier";
  }
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ConsistentDegreeTwo: return "CONSISTENT_DEGREE_<=2";
    case Verdict::HypothesisFails: return "HYPOTHESIS_FAILS";
    case Verdict::HigherOrderPresent: return "HIGHER_ORDER_PRESENT";
  }
  return {};
}

// ---------------------------------------------------------------- slices

Matrix slice_phi(const NcFunction& f, const HermTuple& a, const HermTuple& x, const Matrix& xi) {
  if (xi.rows() != xi.cols()) throw ShapeError("slice parameter must be square");
  const Eigen::Index m = xi.rows();
  const HermTuple lifted_a = kron(a, Matrix::Identity(m, m));
  const HermTuple lifted_x = kron(x, xi);
  const double norm = tuple_norm(lifted_x);
  if (!(norm < f.radius)) {
    throw DomainError("lifted tuple norm " + std::to_string(norm) + " outside radius " + std::to_string(f.radius));
  }
  return f(lifted_a, lifted_x);
}

Matrix slice_compression(const NcFunction& f, const HermTuple& a, const HermTuple& x, const Vector& v,
                         const Matrix& xi) {
  require_square_blocks(f);
  require_vector_size(f, x, v);
  const Eigen::Index m = xi.rows();
  const Matrix vm = kron(normalized(v), Matrix::Identity(m, m));
  return vm.adjoint() * slice_phi(f, a, x, xi) * vm;
}

Complex slice_scalar(const NcFunction& f, const HermTuple& a, const HermTuple& x, const Vector& v, Complex z) {
  require_square_blocks(f);
  require_vector_size(f, x, v);
  const double reach = std::abs(z) * tuple_norm(x);
  if (!(reach < f.radius)) {
    throw DomainError("|z| * ||X|| = " + std::to_string(reach) + " outside radius " + std::to_string(f.radius));
  }
  return compress(normalized(v), f(a.entries(), scaled_entries(x, z), x.size()));
}

// ---------------------------------------------------------------- coefficient extraction

SliceCoefficients extract_slice_coefficients(const NcFunction& f, const HermTuple& a, const HermTuple& x,
                                             const Vector& v, std::size_t degree_cap, double radius,
                                             ExtractionPath path) {
  if (degree_cap < 2) throw DomainError("degree cap must be at least 2");
  if (!(radius > 0)) throw DomainError("extraction radius must be positive");
  require_square_blocks(f);
  require_vector_size(f, x, v);
  const double reach = radius * tuple_norm(x);
  if (!(reach < f.radius)) {
    throw DomainError("extraction reach " + std::to_string(reach) + " outside radius " + std::to_string(f.radius));
  }
  if (path == ExtractionPath::Auto) path = f.series ? ExtractionPath::Exact : ExtractionPath::Fourier;
  if (path == ExtractionPath::Exact && !f.series) throw DomainError("exact extraction needs an explicit power series");

  const Vector unit = normalized(v);
  const std::size_t nodes = degree_cap + 1;
  SliceCoefficients out;
  out.path = path;
  out.coeffs.assign(nodes, Complex{});

  if (path == ExtractionPath::Exact) {
    const NcPowerSeries& series = *f.series;
    const std::size_t top = std::min(degree_cap, series.truncation_order());
    for (std::size_t i = 0; i <= top; ++i) {
      out.coeffs[i] = compress(unit, eval_poly(series.part(i), a.entries(), x.entries(), x.size()));
    }
  } else {
    std::vector<Complex> samples(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      const Complex z = std::polar(radius, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes));
      samples[k] = slice_scalar(f, a, x, unit, z);
    }
    for (std::size_t i = 0; i < nodes; ++i) {
      Complex acc{};
      for (std::size_t k = 0; k < nodes; ++k) {
        const double angle = -2 * std::numbers::pi * static_cast<double>(i * k % nodes) / static_cast<double>(nodes);
        acc += samples[k] * std::polar(1.0, angle);
      }
      out.coeffs[i] = acc / (static_cast<double>(nodes) * std::pow(radius, static_cast<double>(i)));
    }
  }

  // Probe at half radius, phases interleaved with the DFT nodes.
  for (std::size_t j = 0; j < nodes; ++j) {
    const double angle = std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(nodes);
    const Complex z = std::polar(0.5 * radius, angle);
    Complex poly{};
    for (std::size_t i = nodes; i-- > 0;) poly = poly * z + out.coeffs[i];
    out.residual = std::max(out.residual, std::abs(slice_scalar(f, a, x, unit, z) - poly));
  }
  if (out.residual > kExtractionResidualLimit) {
    throw ExtractionError("slice coefficient residual " + std::to_string(out.residual) +
                              " too large; increase the degree cap or shrink the radius",
                          out.residual);
  }
  return out;
}

// ---------------------------------------------------------------- certification

CertificationReport certify_degree_two(const NcFunction& f, const HermTuple& a, const CertifyOptions& options) {
  if (!(options.epsilon > 0)) throw DomainError("epsilon must be positive");
  require_square_blocks(f);
  CertificationReport report;
  report.radius = options.radius.value_or(options.epsilon / 4);
  report.convexity = test_convexity_at_CA(f, a, options.epsilon, options.multiplicities, options.convexity_trials,
                                          options.seed);

  for (std::size_t s = 0; s < options.samples; ++s) {
    Rng rng(derive_seed(options.seed, 0xce000000ULL + s));
    const std::size_t m = options.multiplicities[s % options.multiplicities.size()];
    const CASetElement element = ca_element(a, m, UnitaryChoice::Random, rng);
    const Eigen::Index n = element.alpha().size();
    HermTuple x = sample_ball_point(f.signature.arity_x, n, options.epsilon / 2, rng);
    Vector v = random_unit_vector(f.block_rows * n, rng);

    SliceCoefficients coeffs;
    try {
      coeffs = extract_slice_coefficients(f, element.alpha(), x, v, options.degree_cap, report.radius, options.path);
    } catch (const ExtractionError& e) {
      ++report.skipped;
      report.log.push_back("sample " + std::to_string(s) + " skipped: " + e.what());
      continue;
    }
    ++report.samples;
    report.max_residual = std::max(report.max_residual, coeffs.residual);
    for (std::size_t i = 3; i < coeffs.coeffs.size(); ++i) {
      const double mag = std::abs(coeffs.coeffs[i]);
      if (!report.witness || mag > report.max_high_order_coeff) {
        report.max_high_order_coeff = mag;
        report.witness = HighOrderWitness{{m, a.size()}, element.alpha(), x, v, i, coeffs.coeffs[i], coeffs.coeffs};
      }
    }
  }

  if (!report.convexity.pass) {
    report.verdict = Verdict::HypothesisFails;
  } else if (report.max_high_order_coeff > kHighOrderZero) {
    report.verdict = Verdict::HigherOrderPresent;
  } else {
    report.verdict = Verdict::ConsistentDegreeTwo;
  }
  if (report.verdict != Verdict::HigherOrderPresent) report.witness.reset();
  return report;
}

// ---------------------------------------------------------------- slice convexity transfer

SliceConvexityReport slice_convexity_check(const NcFunction& f, const HermTuple& a, const HermTuple& x,
                                           const Vector& v, double delta, Eigen::Index max_size, std::size_t trials,
                                           std::uint64_t seed) {
  if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
  SliceConvexityReport report;
  std::uniform_int_distribution<Eigen::Index> size_dist(1, std::max<Eigen::Index>(1, max_size));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    const Eigen::Index m = size_dist(rng);
    const Matrix left = random_hermitian_with_spectrum(m, 1 - delta, 1 + delta, rng);
    const Matrix right = random_hermitian_with_spectrum(m, 1 - delta, 1 + delta, rng);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double t = trial % 2 == 0 ? 0.5 : uniform(rng);
    Matrix d = t * slice_compression(f, a, x, v, left) + (1 - t) * slice_compression(f, a, x, v, right) -
               slice_compression(f, a, x, v, t * left + (1 - t) * right);
    const Eigen::VectorXd eig = hermitian_eigenvalues(0.5 * (d + d.adjoint()));
    if (eig(0) < report.min_defect_eig) {
      report.min_defect_eig = eig(0);
      report.witness = SliceConvexityWitness{left, right, t, eig};
    }
    ++report.trials;
  }
  report.pass = report.min_defect_eig >= -kPsdTolerance;
  if (report.pass) report.witness.reset();
  return report;
}

}  // namespace ncconvex
