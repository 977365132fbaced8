#include "ncconvex/free_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "ncconvex/errors.hpp"

namespace ncconvex {

std::string to_string(const Letter& l) {
  return (l.cls == LetterClass::A ? "a" : "x") + std::to_string(l.index);
}

// ---------------------------------------------------------------- Word

std::size_t Word::x_count() const {
  return static_cast<std::size_t>(std::count_if(letters_.begin(), letters_.end(), [](const Letter& l) {
    return l.cls == LetterClass::X;
  }));
}

Word Word::reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() + rhs.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

std::string Word::str() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += to_string(letters_[i]);
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    const char c = text[pos];
    if (c != 'a' && c != 'x') throw ParseError("unknown letter in word", start);
    ++pos;
    std::uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), index);
    if (ec != std::errc() || index == 0) throw ParseError("bad letter index in word", start);
    pos = static_cast<std::size_t>(ptr - text.data());
    letters.push_back({c == 'a' ? LetterClass::A : LetterClass::X, index});
  }
  return Word(std::move(letters));
}

// ---------------------------------------------------------------- NcPolynomial

namespace {

void require_same_signature(const Signature& l, const Signature& r) {
  if (!(l == r)) {
    throw SignatureError("signature mismatch: (" + std::to_string(l.arity_a) + "," +
                         std::to_string(l.arity_x) + ") vs (" + std::to_string(r.arity_a) + "," +
                         std::to_string(r.arity_x) + ")");
  }
}

void require_word_in_signature(const Signature& sig, const Word& w) {
  for (const auto& l : w.letters()) {
    if (!sig.contains(l)) throw SignatureError("letter " + to_string(l) + " outside signature");
  }
}

}  // namespace

NcPolynomial::NcPolynomial(Signature sig, TermMap terms) : sig_(sig), terms_(std::move(terms)) {
  for (const auto& [w, c] : terms_) require_word_in_signature(sig_, w);
  prune();
}

NcPolynomial NcPolynomial::constant(Signature sig, Complex c) { return monomial(sig, Word{}, c); }

NcPolynomial NcPolynomial::monomial(Signature sig, Word w, Complex c) {
  require_word_in_signature(sig, w);
  NcPolynomial p(sig);
  p.add_term(w, c);
  p.prune();
  return p;
}

NcPolynomial NcPolynomial::variable(Signature sig, Letter l) { return monomial(sig, Word{l}); }

Complex NcPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

int NcPolynomial::degree() const {
  if (terms_.empty()) return kZeroDegree;
  // graded order puts the longest word last
  return static_cast<int>(terms_.rbegin()->first.size());
}

int NcPolynomial::x_degree() const {
  int best = kZeroDegree;
  for (const auto& [w, c] : terms_) best = std::max(best, static_cast<int>(w.x_count()));
  return best;
}

void NcPolynomial::add_term(const Word& w, Complex c) {
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
}

void NcPolynomial::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kCoefficientZero; });
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& rhs) {
  require_same_signature(sig_, rhs.sig_);
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  prune();
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& rhs) {
  require_same_signature(sig_, rhs.sig_);
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  prune();
  return *this;
}

NcPolynomial& NcPolynomial::operator*=(Complex s) {
  for (auto& [w, c] : terms_) c *= s;
  prune();
  return *this;
}

NcPolynomial operator*(const NcPolynomial& l, const NcPolynomial& r) {
  require_same_signature(l.sig_, r.sig_);
  NcPolynomial out(l.sig_);
  for (const auto& [wl, cl] : l.terms_) {
    for (const auto& [wr, cr] : r.terms_) out.add_term(wl * wr, cl * cr);
  }
  out.prune();
  return out;
}

NcPolynomial involute(const NcPolynomial& p) {
  NcPolynomial::TermMap out;
  for (const auto& [w, c] : p.terms()) out.emplace(w.reversed(), std::conj(c));
  return NcPolynomial(p.signature(), std::move(out));
}

bool is_hermitian(const NcPolynomial& p) { return (p - involute(p)).is_zero(); }

NcPolynomial power(const NcPolynomial& p, unsigned exponent) {
  NcPolynomial result = NcPolynomial::constant(p.signature(), 1.0);
  NcPolynomial base = p;
  while (exponent) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

NcPolynomial x_homogeneous_part(const NcPolynomial& p, std::size_t count) {
  NcPolynomial::TermMap out;
  for (const auto& [w, c] : p.terms()) {
    if (w.x_count() == count) out.emplace(w, c);
  }
  return NcPolynomial(p.signature(), std::move(out));
}

// ---------------------------------------------------------------- MatrixNcPolynomial

MatrixNcPolynomial::MatrixNcPolynomial(Signature sig, std::size_t rows, std::size_t cols)
    : sig_(sig), rows_(rows), cols_(cols), entries_(rows * cols, NcPolynomial(sig)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix polynomial needs at least one entry");
}

MatrixNcPolynomial::MatrixNcPolynomial(std::size_t rows, std::size_t cols, std::vector<NcPolynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix polynomial needs at least one entry");
  if (entries_.size() != rows * cols) throw ShapeError("entry count does not match rows*cols");
  sig_ = entries_.front().signature();
  for (const auto& e : entries_) require_same_signature(sig_, e.signature());
}

MatrixNcPolynomial::MatrixNcPolynomial(const NcPolynomial& p) : sig_(p.signature()), rows_(1), cols_(1), entries_{p} {}

bool MatrixNcPolynomial::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

int MatrixNcPolynomial::x_degree() const {
  int best = kZeroDegree;
  for (const auto& e : entries_) best = std::max(best, e.x_degree());
  return best;
}

MatrixNcPolynomial& MatrixNcPolynomial::operator+=(const MatrixNcPolynomial& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix polynomial shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

MatrixNcPolynomial involute(const MatrixNcPolynomial& p) {
  std::vector<NcPolynomial> out;
  out.reserve(p.rows() * p.cols());
  for (std::size_t i = 0; i < p.cols(); ++i) {
    for (std::size_t j = 0; j < p.rows(); ++j) out.push_back(involute(p(j, i)));
  }
  return MatrixNcPolynomial(p.cols(), p.rows(), std::move(out));
}

bool is_hermitian(const MatrixNcPolynomial& p) {
  if (p.rows() != p.cols()) {
    throw ShapeError("is_hermitian needs a square matrix polynomial, got " + std::to_string(p.rows()) + "x" +
                     std::to_string(p.cols()));
  }
  return involute(p) == p;
}

// ---------------------------------------------------------------- NcPowerSeries

NcPowerSeries::NcPowerSeries(std::vector<MatrixNcPolynomial> parts, double radius)
    : parts_(std::move(parts)), radius_(radius) {
  if (parts_.empty()) throw ShapeError("power series needs at least the constant part");
  if (!(radius_ > 0)) throw DomainError("power series radius must be positive");
  const auto& first = parts_.front();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& part = parts_[i];
    if (part.rows() != first.rows() || part.cols() != first.cols()) {
      throw ShapeError("power series parts differ in shape");
    }
    require_same_signature(first.signature(), part.signature());
    for (const auto& entry : part.entries()) {
      for (const auto& [w, c] : entry.terms()) {
        if (w.x_count() != i) {
          throw DomainError("term '" + w.str() + "' in part " + std::to_string(i) + " has x-degree " +
                            std::to_string(w.x_count()));
        }
      }
    }
  }
}

MatrixNcPolynomial NcPowerSeries::sum() const {
  MatrixNcPolynomial out = parts_.front();
  for (std::size_t i = 1; i < parts_.size(); ++i) out += parts_[i];
  return out;
}

bool NcPowerSeries::is_hermitian() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return ncconvex::is_hermitian(p); });
}

NcPowerSeries x_homogeneous_parts(const MatrixNcPolynomial& p) {
  const int top = std::max(p.x_degree(), 0);
  std::vector<MatrixNcPolynomial> parts;
  parts.reserve(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= top; ++i) {
    std::vector<NcPolynomial> entries;
    entries.reserve(p.entries().size());
    for (const auto& e : p.entries()) entries.push_back(x_homogeneous_part(e, static_cast<std::size_t>(i)));
    parts.emplace_back(p.rows(), p.cols(), std::move(entries));
  }
  return NcPowerSeries(std::move(parts), std::numeric_limits<double>::infinity());
}

NcPowerSeries x_homogeneous_parts(const NcPolynomial& p) { return x_homogeneous_parts(MatrixNcPolynomial(p)); }

}  // namespace ncconvex
