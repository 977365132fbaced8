#include "ncconvex/matrix_domain.hpp"

#include <algorithm>
#include <cmath>

#include "ncconvex/errors.hpp"

namespace ncconvex {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- HermTuple

HermTuple::HermTuple(Eigen::Index n, LetterClass cls) : n_(n), cls_(cls) {
  if (n < 0) throw ShapeError("negative tuple size");
}

HermTuple::HermTuple(MatrixTuple entries, LetterClass cls, double tolerance) : HermTuple(0, cls) {
  const Eigen::Index n = entries.empty() ? 0 : entries.front().rows();
  *this = HermTuple(n, std::move(entries), cls, tolerance);
}

HermTuple::HermTuple(Eigen::Index n, MatrixTuple entries, LetterClass cls, double tolerance)
    : n_(n), cls_(cls), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    Matrix& m = entries_[i];
    if (m.rows() != n_ || m.cols() != n_) {
      throw ShapeError("tuple entry " + std::to_string(i) + " is " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected " + std::to_string(n_) + "x" + std::to_string(n_));
    }
    const double defect = hermitian_defect(m);
    if (defect > tolerance) {
      throw DomainError("tuple entry " + std::to_string(i) + " is not Hermitian (deviation " + std::to_string(defect) +
                        ")");
    }
    m = (0.5 * (m + m.adjoint())).eval();
  }
}

HermTuple HermTuple::scaled(double c) const {
  HermTuple out = *this;
  for (auto& m : out.entries_) m *= c;
  return out;
}

HermTuple operator+(const HermTuple& l, const HermTuple& r) {
  if (l.arity() != r.arity() || l.size() != r.size()) throw ShapeError("tuple shape mismatch in sum");
  HermTuple out = l;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += r.entries_[i];
  return out;
}

HermTuple operator-(const HermTuple& l, const HermTuple& r) { return l + r.scaled(-1.0); }

// ---------------------------------------------------------------- norms and spectra

double hermitian_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("eigenvalues need a square matrix");
  if (m.size() == 0) return {};
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return ev.size() == 0 ? 0.0 : ev.minCoeff();
}

double tuple_norm(const MatrixTuple& x) {
  if (x.empty() || x.front().size() == 0) return 0.0;
  Matrix gram = Matrix::Zero(x.front().rows(), x.front().cols());
  for (const auto& m : x) gram += m * m.adjoint();
  const double top = hermitian_eigenvalues(gram).maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

double tuple_norm(const HermTuple& x) { return tuple_norm(x.entries()); }

// ---------------------------------------------------------------- constructions

Matrix direct_sum(const Matrix& l, const Matrix& r) {
  Matrix out = Matrix::Zero(l.rows() + r.rows(), l.cols() + r.cols());
  out.topLeftCorner(l.rows(), l.cols()) = l;
  out.bottomRightCorner(r.rows(), r.cols()) = r;
  return out;
}

HermTuple direct_sum(const HermTuple& z, const HermTuple& w) {
  if (z.arity() != w.arity()) {
    throw ShapeError("direct_sum arity mismatch: " + std::to_string(z.arity()) + " vs " + std::to_string(w.arity()));
  }
  MatrixTuple out;
  out.reserve(z.arity());
  for (std::size_t i = 0; i < z.arity(); ++i) out.push_back(direct_sum(z[i], w[i]));
  return HermTuple(z.size() + w.size(), std::move(out), z.letter_class());
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_entry(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

HermTuple conjugate(const HermTuple& z, const Matrix& u, double tolerance) {
  if (u.rows() != z.size() || u.cols() != z.size()) throw ShapeError("conjugating unitary has the wrong size");
  const double defect = unitarity_defect(u);
  if (defect > tolerance) throw PreconditionError("matrix is not unitary (|U*U - I|_max = " + std::to_string(defect) + ")");
  MatrixTuple out;
  out.reserve(z.arity());
  for (const auto& m : z.entries()) out.push_back(u.adjoint() * m * u);
  // products drift off Hermitian by rounding; ingest symmetrizes
  return HermTuple(z.size(), std::move(out), z.letter_class(), 1e-9);
}

Matrix kron(const Matrix& l, const Matrix& r) {
  Matrix out(l.rows() * r.rows(), l.cols() * r.cols());
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
      out.block(i * r.rows(), j * r.cols(), r.rows(), r.cols()) = l(i, j) * r;
    }
  }
  return out;
}

HermTuple kron(const HermTuple& z, const Matrix& right) {
  MatrixTuple out;
  out.reserve(z.arity());
  for (const auto& m : z.entries()) out.push_back(kron(m, right));
  return HermTuple(z.size() * right.rows(), std::move(out), z.letter_class(), 1e-9);
}

Eigen::PermutationMatrix<Eigen::Dynamic> perfect_shuffle(Eigen::Index p, Eigen::Index q) {
  // (L kron R) has index i*q + j; (R kron L) has index j*p + i.
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(p * q);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) perm.indices()[i * q + j] = static_cast<int>(j * p + i);
  }
  return perm;
}

// ---------------------------------------------------------------- sampling

namespace {

Matrix ginibre(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  const Matrix g = ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix gaussian_hermitian(Eigen::Index n, Rng& rng) {
  const Matrix g = ginibre(n, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_hermitian_with_spectrum(Eigen::Index n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  Eigen::VectorXd spectrum(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double v = uniform(rng);
    while (v <= lo) v = uniform(rng);
    spectrum(k) = v;
  }
  const Matrix u = random_unitary(n, rng);
  Matrix out = u.adjoint() * spectrum.cast<Complex>().asDiagonal() * u;
  return 0.5 * (out + out.adjoint());
}

Vector random_unit_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return v / v.norm();
}

HermTuple sample_ball_point(std::size_t arity, Eigen::Index n, double radius, Rng& rng, LetterClass cls) {
  if (!(radius > 0)) throw DomainError("ball radius must be positive");
  MatrixTuple entries;
  entries.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) entries.push_back(gaussian_hermitian(n, rng));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double fraction = uniform(rng);
  while (fraction <= 0.0) fraction = uniform(rng);
  const double norm = tuple_norm(entries);
  if (norm > 0) {
    const double scale = fraction * radius / norm;
    for (auto& m : entries) m *= scale;
  }
  HermTuple out(n, std::move(entries), cls, 1e-9);
  // rescaling can round a hair past the target; pull back inside the open ball
  if (const double got = tuple_norm(out); got >= radius) out = out.scaled(radius * (1.0 - 1e-12) / got);
  return out;
}

std::vector<HermTuple> sample_x_ball(const Signature& sig, Eigen::Index n, double epsilon, std::size_t count,
                                     std::uint64_t seed) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  Rng rng(seed);
  std::vector<HermTuple> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sample_ball_point(sig.arity_x, n, epsilon, rng));
  return out;
}

// ---------------------------------------------------------------- C_A

CASetElement::CASetElement(HermTuple base, std::size_t multiplicity, Matrix unitary)
    : base_(std::move(base)), m_(multiplicity), u_(std::move(unitary)) {
  if (m_ == 0) throw DomainError("multiplicity must be positive");
  const Eigen::Index dim = base_.size() * static_cast<Eigen::Index>(m_);
  if (u_.rows() != dim || u_.cols() != dim) throw ShapeError("C_A unitary must have size kappa*m");
  const Matrix identity = Matrix::Identity(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  MatrixTuple stacked;
  stacked.reserve(base_.arity());
  for (const auto& a : base_.entries()) stacked.push_back(kron(identity, a));
  alpha_ = conjugate(HermTuple(dim, std::move(stacked), LetterClass::A), u_, 1e-12);
}

CASetElement ca_element(const HermTuple& a, std::size_t m, const Matrix& unitary) {
  return CASetElement(a, m, unitary);
}

CASetElement ca_element(const HermTuple& a, std::size_t m, UnitaryChoice choice, Rng& rng) {
  const Eigen::Index dim = a.size() * static_cast<Eigen::Index>(m);
  Matrix u = choice == UnitaryChoice::Identity ? Matrix::Identity(dim, dim) : random_unitary(dim, rng);
  return CASetElement(a, m, std::move(u));
}

}  // namespace ncconvex
