#include "ncconvex/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ncconvex/errors.hpp"

namespace ncconvex {

namespace {

void check_arguments(const Signature& sig, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) {
  if (a.size() != sig.arity_a || x.size() != sig.arity_x) {
    throw ShapeError("tuple arities (" + std::to_string(a.size()) + "," + std::to_string(x.size()) +
                     ") do not match signature (" + std::to_string(sig.arity_a) + "," +
                     std::to_string(sig.arity_x) + ")");
  }
  auto check = [n](const Matrix& m) {
    if (m.rows() != n || m.cols() != n) throw ShapeError("tuple entry size does not match level " + std::to_string(n));
  };
  std::for_each(a.begin(), a.end(), check);
  std::for_each(x.begin(), x.end(), check);
}

Eigen::Index shared_size(const HermTuple& a, const HermTuple& x) {
  if (a.size() != x.size()) {
    throw ShapeError("a-tuple has size " + std::to_string(a.size()) + " but x-tuple has size " +
                     std::to_string(x.size()));
  }
  return a.size();
}

const Matrix& letter_matrix(const Letter& l, const MatrixTuple& a, const MatrixTuple& x) {
  return l.cls == LetterClass::A ? a[l.index - 1] : x[l.index - 1];
}

// Prefix products for one evaluation call.
class PrefixCache {
 public:
  PrefixCache(const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) : a_(a), x_(x), n_(n) {}

  const Matrix& product(const Word& w) {
    std::vector<Letter> key;
    key.reserve(w.size());
    const Matrix* current = &identity();
    for (const auto& l : w.letters()) {
      key.push_back(l);
      auto it = cache_.find(key);
      if (it == cache_.end()) it = cache_.emplace(key, (*current) * letter_matrix(l, a_, x_)).first;
      current = &it->second;
    }
    return *current;
  }

 private:
  const Matrix& identity() {
    if (!identity_) identity_ = Matrix::Identity(n_, n_);
    return *identity_;
  }

  const MatrixTuple& a_;
  const MatrixTuple& x_;
  Eigen::Index n_;
  std::optional<Matrix> identity_;
  std::map<std::vector<Letter>, Matrix> cache_;
};

Matrix eval_with_cache(const NcPolynomial& p, PrefixCache& cache, Eigen::Index n) {
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [w, c] : p.terms()) out += c * cache.product(w);
  return out;
}

}  // namespace

Matrix eval_word(const Word& w, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) {
  Matrix out = Matrix::Identity(n, n);
  for (const auto& l : w.letters()) out = out * letter_matrix(l, a, x);
  return out;
}

Matrix eval_poly(const NcPolynomial& p, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) {
  check_arguments(p.signature(), a, x, n);
  PrefixCache cache(a, x, n);
  return eval_with_cache(p, cache, n);
}

Matrix eval_poly(const NcPolynomial& p, const HermTuple& a, const HermTuple& x) {
  return eval_poly(p, a.entries(), x.entries(), shared_size(a, x));
}

Matrix eval_poly(const MatrixNcPolynomial& p, const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) {
  check_arguments(p.signature(), a, x, n);
  PrefixCache cache(a, x, n);
  const auto rows = static_cast<Eigen::Index>(p.rows());
  const auto cols = static_cast<Eigen::Index>(p.cols());
  Matrix out(rows * n, cols * n);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out.block(i * n, j * n, n, n) =
          eval_with_cache(p(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), cache, n);
    }
  }
  return out;
}

Matrix eval_poly(const MatrixNcPolynomial& p, const HermTuple& a, const HermTuple& x) {
  return eval_poly(p, a.entries(), x.entries(), shared_size(a, x));
}

SeriesEvaluation eval_series(const NcPowerSeries& f, const HermTuple& a, const HermTuple& x, std::size_t up_to) {
  const Eigen::Index n = shared_size(a, x);
  if (up_to > f.truncation_order()) {
    throw DomainError("requested order " + std::to_string(up_to) + " exceeds truncation order " +
                      std::to_string(f.truncation_order()));
  }
  const double norm = tuple_norm(x);
  if (!(norm < f.radius())) {
    throw DomainError("tuple norm " + std::to_string(norm) + " is outside the series radius " +
                      std::to_string(f.radius()));
  }
  check_arguments(f.signature(), a.entries(), x.entries(), n);
  SeriesEvaluation out;
  out.value = Matrix::Zero(static_cast<Eigen::Index>(f.rows()) * n, static_cast<Eigen::Index>(f.cols()) * n);
  for (std::size_t i = 0; i <= up_to; ++i) {
    const Matrix part = eval_poly(f.part(i), a.entries(), x.entries(), n);
    out.value += part;
    out.last_increment = max_abs_entry(part);
  }
  return out;
}

// ---------------------------------------------------------------- NcFunction

Matrix NcFunction::operator()(const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) const {
  check_arguments(signature, a, x, n);
  Matrix out = evaluate(a, x, n);
  if (out.rows() != block_rows * n || out.cols() != block_cols * n) {
    throw ShapeError("function '" + name + "' returned a matrix of the wrong size");
  }
  return out;
}

Matrix NcFunction::operator()(const HermTuple& a, const HermTuple& x) const {
  return (*this)(a.entries(), x.entries(), shared_size(a, x));
}

NcFunction polynomial_function(std::string name, const MatrixNcPolynomial& p) {
  NcFunction f;
  f.name = std::move(name);
  f.signature = p.signature();
  f.block_rows = static_cast<Eigen::Index>(p.rows());
  f.block_cols = static_cast<Eigen::Index>(p.cols());
  f.evaluate = [p](const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) { return eval_poly(p, a, x, n); };
  f.series = x_homogeneous_parts(p);
  return f;
}

NcFunction polynomial_function(std::string name, const NcPolynomial& p) {
  return polynomial_function(std::move(name), MatrixNcPolynomial(p));
}

NcFunction series_function(std::string name, const NcPowerSeries& s) {
  NcFunction f;
  f.name = std::move(name);
  f.signature = s.signature();
  f.block_rows = static_cast<Eigen::Index>(s.rows());
  f.block_cols = static_cast<Eigen::Index>(s.cols());
  f.radius = s.radius();
  f.evaluate = [total = s.sum()](const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) {
    return eval_poly(total, a, x, n);
  };
  f.series = s;
  return f;
}

// ---------------------------------------------------------------- nc-function axioms

namespace {

// Entry (i, j) block of the result is diag(FZ_ij, FW_ij).
Matrix blockwise_direct_sum(const Matrix& fz, const Matrix& fw, Eigen::Index rows, Eigen::Index cols,
                            Eigen::Index nz, Eigen::Index nw) {
  const Eigen::Index n = nz + nw;
  Matrix out = Matrix::Zero(rows * n, cols * n);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out.block(i * n, j * n, nz, nz) = fz.block(i * nz, j * nz, nz, nz);
      out.block(i * n + nz, j * n + nz, nw, nw) = fw.block(i * nw, j * nw, nw, nw);
    }
  }
  return out;
}

Matrix block_identity_kron(Eigen::Index blocks, const Matrix& u) {
  return kron(Matrix::Identity(blocks, blocks), u);
}

}  // namespace

double direct_sum_deviation(const NcFunction& f, const HermTuple& z_a, const HermTuple& z_x, const HermTuple& w_a,
                            const HermTuple& w_x) {
  const Matrix joint = f(direct_sum(z_a, w_a), direct_sum(z_x, w_x));
  const Matrix split =
      blockwise_direct_sum(f(z_a, z_x), f(w_a, w_x), f.block_rows, f.block_cols, z_x.size(), w_x.size());
  return max_abs_entry(joint - split);
}

double unitary_deviation(const NcFunction& f, const HermTuple& z_a, const HermTuple& z_x, const Matrix& u) {
  const Matrix moved = f(conjugate(z_a, u), conjugate(z_x, u));
  const Matrix expected =
      block_identity_kron(f.block_rows, u).adjoint() * f(z_a, z_x) * block_identity_kron(f.block_cols, u);
  return max_abs_entry(moved - expected);
}

AxiomReport check_nc_function_axioms(const NcFunction& f, const AxiomOptions& options) {
  AxiomReport report;
  const double radius = std::min(options.sample_radius, 0.5 * f.radius);
  std::uniform_int_distribution<Eigen::Index> size_dist(1, std::max<Eigen::Index>(1, options.max_size));

  for (std::size_t s = 0; s < options.samples; ++s) {
    Rng rng(derive_seed(options.seed, s));
    const Eigen::Index nz = size_dist(rng);
    const Eigen::Index nw = size_dist(rng);
    AxiomCounterexample sample;
    sample.z_a = sample_ball_point(f.signature.arity_a, nz, radius, rng, LetterClass::A);
    sample.z_x = sample_ball_point(f.signature.arity_x, nz, radius, rng, LetterClass::X);
    sample.w_a = sample_ball_point(f.signature.arity_a, nw, radius, rng, LetterClass::A);
    sample.w_x = sample_ball_point(f.signature.arity_x, nw, radius, rng, LetterClass::X);
    sample.unitary = random_unitary(nz, rng);

    const double ds = direct_sum_deviation(f, sample.z_a, sample.z_x, sample.w_a, sample.w_x);
    const double ud = unitary_deviation(f, sample.z_a, sample.z_x, sample.unitary);

    if (!report.direct_sum_witness || ds > report.max_direct_sum_deviation) {
      report.max_direct_sum_deviation = ds;
      report.direct_sum_witness = sample;
      report.direct_sum_witness->deviation = ds;
    }
    if (!report.unitary_witness || ud > report.max_unitary_deviation) {
      report.max_unitary_deviation = ud;
      report.unitary_witness = sample;
      report.unitary_witness->deviation = ud;
    }
    ++report.samples;
  }

  const bool ds_ok = report.max_direct_sum_deviation < options.tolerance;
  const bool ud_ok = report.max_unitary_deviation < options.tolerance;
  report.pass = ds_ok && ud_ok;
  if (ds_ok) report.direct_sum_witness.reset();
  if (ud_ok) report.unitary_witness.reset();
  return report;
}

}  // namespace ncconvex
