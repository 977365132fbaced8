#pragma once

// Free algebra over two classes of Hermitian letters (a and x): words,
// polynomials with complex coefficients, the involution, the x-grading and
// matrix-valued polynomials / truncated x-power series.

#include <complex>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ncconvex {

using Complex = std::complex<double>;

enum class LetterClass : std::uint8_t { A = 0, X = 1 };

struct Letter {
  LetterClass cls = LetterClass::X;
  std::uint32_t index = 1;  // 1-based

  static constexpr Letter a(std::uint32_t i) { return {LetterClass::A, i}; }
  static constexpr Letter x(std::uint32_t i) { return {LetterClass::X, i}; }

  // A-letters sort before X-letters, then by ascending index.
  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

std::string to_string(const Letter& l);

/// Arity of each variable class.
struct Signature {
  std::uint32_t arity_a = 0;
  std::uint32_t arity_x = 0;

  bool contains(const Letter& l) const {
    const auto arity = l.cls == LetterClass::A ? arity_a : arity_x;
    return l.index >= 1 && l.index <= arity;
  }
  friend constexpr bool operator==(const Signature&, const Signature&) = default;
};

/// A word in the letters; the empty word is the unit.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  std::size_t x_count() const;
  Word reversed() const;
  Word operator*(const Word& rhs) const;

  /// Space separated letters, e.g. "a1 x2 x2"; unit word is "".
  std::string str() const;
  static Word parse(std::string_view text);

  bool operator==(const Word&) const = default;

  // Graded lexicographic: shorter words first, then letter by letter.
  friend std::strong_ordering operator<=>(const Word& l, const Word& r) {
    if (auto c = l.size() <=> r.size(); c != 0) return c;
    return l.letters_ <=> r.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Coefficients with magnitude below this are dropped after arithmetic.
inline constexpr double kCoefficientZero = 1e-14;

class NcPolynomial {
 public:
  using TermMap = std::map<Word, Complex>;

  explicit NcPolynomial(Signature sig = {}) : sig_(sig) {}
  NcPolynomial(Signature sig, TermMap terms);

  static NcPolynomial constant(Signature sig, Complex c);
  static NcPolynomial monomial(Signature sig, Word w, Complex c = 1.0);
  static NcPolynomial variable(Signature sig, Letter l);

  const Signature& signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex coefficient(const Word& w) const;

  /// Longest word length; kZeroDegree for the zero polynomial.
  int degree() const;
  /// Largest number of x-letters in any term; kZeroDegree for zero.
  int x_degree() const;

  NcPolynomial& operator+=(const NcPolynomial& rhs);
  NcPolynomial& operator-=(const NcPolynomial& rhs);
  NcPolynomial& operator*=(Complex s);

  friend NcPolynomial operator+(NcPolynomial l, const NcPolynomial& r) { return l += r; }
  friend NcPolynomial operator-(NcPolynomial l, const NcPolynomial& r) { return l -= r; }
  friend NcPolynomial operator-(NcPolynomial p) { return p *= -1.0; }
  friend NcPolynomial operator*(Complex s, NcPolynomial p) { return p *= s; }
  friend NcPolynomial operator*(NcPolynomial p, Complex s) { return p *= s; }
  friend NcPolynomial operator*(const NcPolynomial& l, const NcPolynomial& r);

  friend bool operator==(const NcPolynomial&, const NcPolynomial&) = default;

 private:
  void add_term(const Word& w, Complex c);
  void prune();

  Signature sig_;
  TermMap terms_;
};

NcPolynomial involute(const NcPolynomial& p);
bool is_hermitian(const NcPolynomial& p);
NcPolynomial power(const NcPolynomial& p, unsigned exponent);

/// Terms of p with exactly `count` x-letters.
NcPolynomial x_homogeneous_part(const NcPolynomial& p, std::size_t count);

/// Row-major grid of polynomials over a shared signature.
class MatrixNcPolynomial {
 public:
  MatrixNcPolynomial(Signature sig, std::size_t rows, std::size_t cols);
  MatrixNcPolynomial(std::size_t rows, std::size_t cols, std::vector<NcPolynomial> entries);
  /// 1x1 matrix around a scalar polynomial.
  explicit MatrixNcPolynomial(const NcPolynomial& p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Signature& signature() const { return sig_; }

  const NcPolynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  NcPolynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const std::vector<NcPolynomial>& entries() const { return entries_; }

  bool is_zero() const;
  int x_degree() const;

  MatrixNcPolynomial& operator+=(const MatrixNcPolynomial& rhs);
  friend MatrixNcPolynomial operator+(MatrixNcPolynomial l, const MatrixNcPolynomial& r) { return l += r; }
  friend bool operator==(const MatrixNcPolynomial&, const MatrixNcPolynomial&) = default;

 private:
  Signature sig_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<NcPolynomial> entries_;
};

/// Conjugate transpose of the grid with every entry involuted.
MatrixNcPolynomial involute(const MatrixNcPolynomial& p);
/// Throws ShapeError on a non-square grid.
bool is_hermitian(const MatrixNcPolynomial& p);

/// Truncated x-power series: parts[i] is homogeneous of x-degree i.
class NcPowerSeries {
 public:
  NcPowerSeries(std::vector<MatrixNcPolynomial> parts, double radius = 1.0);

  const std::vector<MatrixNcPolynomial>& parts() const { return parts_; }
  const MatrixNcPolynomial& part(std::size_t i) const { return parts_.at(i); }
  std::size_t truncation_order() const { return parts_.size() - 1; }
  const Signature& signature() const { return parts_.front().signature(); }
  std::size_t rows() const { return parts_.front().rows(); }
  std::size_t cols() const { return parts_.front().cols(); }

  /// Declared convergence radius in the tuple norm of x.
  double radius() const { return radius_; }
  void set_radius(double r) { radius_ = r; }

  /// Sum of all parts.
  MatrixNcPolynomial sum() const;
  bool is_hermitian() const;

 private:
  std::vector<MatrixNcPolynomial> parts_;
  double radius_;
};

/// Split p by number of x-letters. A polynomial converges everywhere, so the
/// resulting series carries an infinite radius.
NcPowerSeries x_homogeneous_parts(const MatrixNcPolynomial& p);
NcPowerSeries x_homogeneous_parts(const NcPolynomial& p);

}  // namespace ncconvex
