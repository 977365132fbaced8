#include "ncconvex/one_var.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ncconvex/errors.hpp"

namespace ncconvex {

double derivative(const ScalarFn& fn, double t, double step) {
  if (fn.df) return (*fn.df)(t);
  const auto& d = fn.domain;
  if (d.contains(t - step) && d.contains(t + step)) {
    auto central = [&](double h) { return (fn(t + h) - fn(t - h)) / (2 * h); };
    return (4 * central(step / 2) - central(step)) / 3;
  }
  const double dir = d.contains(t + step) ? 1.0 : -1.0;
  auto one_sided = [&](double h) { return (fn(t + dir * h) - fn(t)) / (dir * h); };
  return 2 * one_sided(step / 2) - one_sided(step);
}

// ---------------------------------------------------------------- DiscreteMeasure

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!(a.weight >= 0) || !std::isfinite(a.location)) throw DomainError("measure atoms need finite locations and non-negative weights");
  }
}

double DiscreteMeasure::total_weight() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0.0, [](double s, const Atom& a) { return s + a.weight; });
}

bool DiscreteMeasure::is_probability_on_unit_interval() const {
  const bool inside = std::all_of(atoms_.begin(), atoms_.end(),
                                  [](const Atom& a) { return a.location >= -1.0 && a.location <= 1.0; });
  return inside && std::abs(total_weight() - 1.0) <= 1e-12;
}

// ---------------------------------------------------------------- spectral calculus

Matrix matrix_apply(const ScalarFn& fn, const Matrix& b) {
  if (b.rows() != b.cols()) throw ShapeError("matrix_apply needs a square matrix");
  const Matrix sym = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  Eigen::VectorXcd mapped(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (!fn.domain.contains(ev(k))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "eigenvalue " << ev(k) << " lies outside the domain (" << fn.domain.lo << ", " << fn.domain.hi << ")";
      if (!fn.name.empty()) msg << " of " << fn.name;
      throw DomainError(msg.str());
    }
    mapped(k) = fn(ev(k));
  }
  const Matrix& v = solver.eigenvectors();
  Matrix out = v * mapped.asDiagonal() * v.adjoint();
  return 0.5 * (out + out.adjoint());
}

Matrix kraus_eval(double f0, double f1, double f2, const DiscreteMeasure& mu, const Matrix& b) {
  if (b.rows() != b.cols()) throw ShapeError("kraus_eval needs a square matrix");
  if (hermitian_defect(b) > 1e-10) throw PreconditionError("kraus_eval needs a Hermitian matrix");
  if (!mu.is_probability_on_unit_interval()) {
    throw PreconditionError("Kraus measure must be a probability measure on [-1, 1]");
  }
  const Eigen::VectorXd spectrum = hermitian_eigenvalues(b);
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    if (!(spectrum(k) > -1.0 && spectrum(k) < 1.0)) {
      throw DomainError("spectrum point " + std::to_string(spectrum(k)) + " outside (-1, 1)");
    }
  }
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& atom : mu.atoms()) {
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
      closest = std::min(closest, std::abs(1.0 - atom.location * spectrum(k)));
    }
  }
  if (closest <= kPoleGate) {
    throw SingularityError("Kraus kernel pole: min |1 - lambda t| = " + std::to_string(closest));
  }

  const Eigen::Index n = b.rows();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix b2 = b * b;
  Matrix kernel = Matrix::Zero(n, n);
  for (const auto& atom : mu.atoms()) {
    if (atom.weight == 0.0) continue;
    // B^2 and (I - lambda B) commute, so a left solve gives B^2 (I - lambda B)^{-1}.
    kernel += atom.weight * (identity - atom.location * b).partialPivLu().solve(b2);
  }
  Matrix out = f0 * identity + f1 * b + 0.5 * f2 * kernel;
  return 0.5 * (out + out.adjoint());
}

ScalarFn kraus_function(double f0, double f1, double f2, const DiscreteMeasure& mu) {
  ScalarFn fn;
  fn.name = "kraus";
  Interval domain;
  for (const auto& atom : mu.atoms()) {
    if (atom.location > 0) domain.hi = std::min(domain.hi, 1.0 / atom.location);
    if (atom.location < 0) domain.lo = std::max(domain.lo, 1.0 / atom.location);
  }
  fn.domain = domain;
  const auto atoms = mu.atoms();
  fn.f = [=](double t) {
    double kernel = 0.0;
    for (const auto& a : atoms) kernel += a.weight * t * t / (1.0 - a.location * t);
    return f0 + f1 * t + 0.5 * f2 * kernel;
  };
  fn.df = [=](double t) {
    double kernel = 0.0;
    for (const auto& a : atoms) {
      const double d = 1.0 - a.location * t;
      kernel += a.weight * (2 * t - a.location * t * t) / (d * d);
    }
    return f1 + 0.5 * f2 * kernel;
  };
  fn.d2f = [=](double t) {
    double kernel = 0.0;
    for (const auto& a : atoms) {
      const double d = 1.0 - a.location * t;
      kernel += a.weight * 2.0 / (d * d * d);
    }
    return 0.5 * f2 * kernel;
  };
  return fn;
}

Complex pick_eval(double alpha, double beta, const DiscreteMeasure& mu, Complex z) {
  Complex out = alpha * z + beta;
  for (const auto& atom : mu.atoms()) {
    const Complex gap = atom.location - z;
    if (std::abs(gap) < 1e-14) {
      throw SingularityError("Pick evaluation point collides with atom at " + std::to_string(atom.location));
    }
    out += atom.weight * (1.0 / gap - atom.location / (atom.location * atom.location + 1.0));
  }
  return out;
}

ScalarFn g_transform(const ScalarFn& fn) {
  if (!fn.domain.contains(0.0)) throw DomainError("g_transform needs 0 inside the domain");
  ScalarFn g;
  g.name = "g[" + fn.name + "]";
  g.domain = fn.domain;
  const double f0 = fn(0.0);
  const double slope = derivative(fn, 0.0);
  g.f = [fn, f0, slope](double t) { return t == 0.0 ? slope : (fn(t) - f0) / t; };
  return g;
}

// ---------------------------------------------------------------- Loewner test

Eigen::MatrixXd loewner_matrix(const ScalarFn& fn, const std::vector<double>& points) {
  const auto k = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd l(k, k);
  std::vector<double> values(points.size());
  std::transform(points.begin(), points.end(), values.begin(), [&](double t) { return fn(t); });
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    l(i, i) = derivative(fn, points[ui]);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const double dd = (values[ui] - values[uj]) / (points[ui] - points[uj]);
      l(i, j) = dd;
      l(j, i) = dd;
    }
  }
  return l;
}

MonotoneReport loewner_monotone_test(const ScalarFn& fn, Interval interval, std::size_t points_per_trial,
                                     std::size_t trials, std::uint64_t seed) {
  if (points_per_trial < 2) throw DomainError("Loewner test needs at least two points per trial");
  if (!interval.finite() || !(interval.lo < interval.hi)) throw DomainError("Loewner test needs a finite interval");
  if (interval.lo < fn.domain.lo || interval.hi > fn.domain.hi) {
    throw DomainError("test interval leaves the domain of " + fn.name);
  }
  const double min_gap = 1e-7 * (interval.hi - interval.lo);
  MonotoneReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    std::uniform_real_distribution<double> uniform(interval.lo, interval.hi);
    std::vector<double> points;
    for (;;) {
      points.clear();
      while (points.size() < points_per_trial) {
        const double t = uniform(rng);
        if (interval.contains(t)) points.push_back(t);
      }
      std::sort(points.begin(), points.end());
      bool distinct = true;
      for (std::size_t i = 1; i < points.size(); ++i) distinct = distinct && points[i] - points[i - 1] > min_gap;
      if (distinct) break;
    }
    const Eigen::MatrixXd l = loewner_matrix(fn, points);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l, Eigen::EigenvaluesOnly);
    const double lowest = solver.eigenvalues().minCoeff();
    if (lowest < report.min_eig) {
      report.min_eig = lowest;
      report.witness = MonotoneWitness{points, l, lowest};
    }
    ++report.trials;
  }
  report.pass = report.min_eig >= -kPsdTolerance;
  if (report.pass) report.witness.reset();
  return report;
}

// ---------------------------------------------------------------- matrix convexity, one variable

Matrix convexity_defect(const ScalarFn& fn, const Matrix& a, const Matrix& b, double t) {
  const Matrix mix = t * a + (1 - t) * b;
  Matrix d = t * matrix_apply(fn, a) + (1 - t) * matrix_apply(fn, b) - matrix_apply(fn, mix);
  return 0.5 * (d + d.adjoint());
}

ConvexityReport1 convexity_test_1var(const ScalarFn& fn, Interval interval, Eigen::Index size, std::size_t trials,
                                     std::uint64_t seed) {
  if (size < 1) throw DomainError("matrix size must be positive");
  if (!interval.finite() || !(interval.lo < interval.hi)) throw DomainError("convexity test needs a finite interval");
  ConvexityReport1 report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int attempt = 0;; ++attempt) {
      const Matrix a = random_hermitian_with_spectrum(size, interval.lo, interval.hi, rng);
      const Matrix b = random_hermitian_with_spectrum(size, interval.lo, interval.hi, rng);
      const double t = trial % 2 == 0 ? 0.5 : uniform(rng);
      Matrix defect;
      try {
        defect = convexity_defect(fn, a, b, t);
      } catch (const DomainError&) {
        // float dust pushed a mixed eigenvalue onto the boundary
        if (attempt < 16) continue;
        throw;
      }
      const Eigen::VectorXd eig = hermitian_eigenvalues(defect);
      if (eig(0) < report.min_eig) {
        report.min_eig = eig(0);
        report.witness = ConvexityWitness1{a, b, t, eig};
      }
      break;
    }
    ++report.trials;
  }
  report.pass = report.min_eig >= -kPsdTolerance;
  if (report.pass) report.witness.reset();
  return report;
}

}  // namespace ncconvex
