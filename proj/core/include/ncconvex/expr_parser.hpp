#pragma once

// Text front end for nc polynomials.
//
//   expr    := sum
//   sum     := unary (('+' | '-') unary)*
//   unary   := '-' unary | product
//   product := postfix ('*' postfix)*
//   postfix := power ('\'')*
//   power   := primary ('^' integer)?
//   primary := variable | literal | '(' expr ')' | 'star' '(' expr ')'
//
// Variables are a<k>, x<k>, and z<k> (an alias for x<k>, accepted only when
// the signature has no a-variables). Literals are reals, imaginary reals
// ("3i", "2.5e-1i") or the bare unit "i". Juxtaposition is not a product.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ncconvex/free_algebra.hpp"

namespace ncconvex {

inline constexpr unsigned kMaxExponent = 128;
inline constexpr std::size_t kDefaultTermCap = 1'000'000;

struct ExprAst {
  enum class Kind { Variable, Literal, Star, Add, Subtract, Negate, Multiply, Power, Group };

  Kind kind = Kind::Literal;
  Letter letter{};          // Variable
  Complex value{};          // Literal
  unsigned exponent = 0;    // Power
  std::size_t offset = 0;   // first byte of the node in the source
  std::vector<ExprAst> children;

  bool operator==(const ExprAst&) const = default;
};

struct Expression {
  Signature signature;
  ExprAst root;
};

Expression parse(std::string_view src, Signature sig);

/// Expand to canonical form. Throws ResourceError past `term_cap` terms.
NcPolynomial lower(const Expression& expr, std::size_t term_cap = kDefaultTermCap);

inline NcPolynomial parse_polynomial(std::string_view src, Signature sig) { return lower(parse(src, sig)); }

/// Smallest signature covering every variable mentioned in src.
Signature infer_signature(std::string_view src);

/// Fully parenthesized rendering of the tree; involution prints as star(...).
std::string to_string(const ExprAst& ast);

/// Expression text for p that parses back to p (coefficients printed with
/// round-trip precision).
std::string render(const NcPolynomial& p);

}  // namespace ncconvex
