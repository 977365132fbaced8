#include "ncconvex/expr_parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "ncconvex/errors.hpp"

namespace ncconvex {

namespace {

struct Token {
  enum class Kind { Number, Variable, Plus, Minus, Times, Caret, Prime, LParen, RParen, StarFn, End };

  Kind kind = Kind::End;
  std::size_t offset = 0;
  double number = 0.0;
  bool imaginary = false;
  bool integral = false;
  char var_class = 0;  // 'a', 'x' or 'z'
  std::uint32_t index = 0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < src.size()) {
    const char c = src[pos];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos;
      continue;
    }
    Token tok;
    tok.offset = pos;
    switch (c) {
      case '+': tok.kind = Token::Kind::Plus; ++pos; out.push_back(tok); continue;
      case '-': tok.kind = Token::Kind::Minus; ++pos; out.push_back(tok); continue;
      case '*': tok.kind = Token::Kind::Times; ++pos; out.push_back(tok); continue;
      case '^': tok.kind = Token::Kind::Caret; ++pos; out.push_back(tok); continue;
      case '\'': tok.kind = Token::Kind::Prime; ++pos; out.push_back(tok); continue;
      case '(': tok.kind = Token::Kind::LParen; ++pos; out.push_back(tok); continue;
      case ')': tok.kind = Token::Kind::RParen; ++pos; out.push_back(tok); continue;
      default: break;
    }

    if (is_digit(c) || c == '.') {
      std::size_t end = pos;
      while (end < src.size() && is_digit(src[end])) ++end;
      bool integral = true;
      if (end < src.size() && src[end] == '.') {
        integral = false;
        ++end;
        while (end < src.size() && is_digit(src[end])) ++end;
      }
      if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
        std::size_t exp = end + 1;
        if (exp < src.size() && (src[exp] == '+' || src[exp] == '-')) ++exp;
        if (exp < src.size() && is_digit(src[exp])) {
          integral = false;
          end = exp;
          while (end < src.size() && is_digit(src[end])) ++end;
        }
      }
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(src.data() + pos, src.data() + end, value);
      if (ec != std::errc() || ptr != src.data() + end) throw ParseError("malformed number", pos);
      tok.kind = Token::Kind::Number;
      tok.number = value;
      tok.integral = integral;
      pos = end;
      if (pos < src.size() && src[pos] == 'i' && (pos + 1 >= src.size() || !is_alpha(src[pos + 1]))) {
        tok.imaginary = true;
        tok.integral = false;
        ++pos;
      }
      out.push_back(tok);
      continue;
    }

    if (is_alpha(c)) {
      std::size_t end = pos;
      while (end < src.size() && (is_alpha(src[end]) || is_digit(src[end]))) ++end;
      const std::string_view word = src.substr(pos, end - pos);
      if (word == "i") {
        tok.kind = Token::Kind::Number;
        tok.number = 1.0;
        tok.imaginary = true;
      } else if (word == "star") {
        tok.kind = Token::Kind::StarFn;
      } else if ((c == 'a' || c == 'x' || c == 'z') && word.size() > 1 &&
                 std::all_of(word.begin() + 1, word.end(), is_digit)) {
        std::uint32_t index = 0;
        auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), index);
        if (ec != std::errc() || index == 0) throw ParseError("bad variable index in '" + std::string(word) + "'", pos);
        tok.kind = Token::Kind::Variable;
        tok.var_class = c;
        tok.index = index;
      } else {
        throw ParseError("unknown token '" + std::string(word) + "'", pos);
      }
      pos = end;
      out.push_back(tok);
      continue;
    }
    throw ParseError(std::string("unknown character '") + c + "'", pos);
  }
  Token end;
  end.kind = Token::Kind::End;
  end.offset = src.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature sig) : tokens_(std::move(tokens)), sig_(sig) {}

  ExprAst parse_all() {
    if (peek().kind == Token::Kind::End) throw ParseError("empty expression", peek().offset);
    ExprAst root = sum();
    if (peek().kind != Token::Kind::End) throw ParseError("unexpected token", peek().offset);
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  static ExprAst binary(ExprAst::Kind kind, ExprAst lhs, ExprAst rhs, std::size_t offset) {
    ExprAst node;
    node.kind = kind;
    node.offset = offset;
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    return node;
  }

  static ExprAst unary_node(ExprAst::Kind kind, ExprAst child, std::size_t offset) {
    ExprAst node;
    node.kind = kind;
    node.offset = offset;
    node.children.push_back(std::move(child));
    return node;
  }

  ExprAst sum() {
    ExprAst lhs = unary();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      const Token& op = advance();
      ExprAst rhs = unary();
      lhs = binary(op.kind == Token::Kind::Plus ? ExprAst::Kind::Add : ExprAst::Kind::Subtract, std::move(lhs),
                   std::move(rhs), op.offset);
    }
    return lhs;
  }

  ExprAst unary() {
    if (peek().kind == Token::Kind::Minus) {
      const std::size_t offset = advance().offset;
      return unary_node(ExprAst::Kind::Negate, unary(), offset);
    }
    return product();
  }

  ExprAst product() {
    ExprAst lhs = postfix();
    while (peek().kind == Token::Kind::Times) {
      const std::size_t offset = advance().offset;
      lhs = binary(ExprAst::Kind::Multiply, std::move(lhs), postfix(), offset);
    }
    return lhs;
  }

  ExprAst postfix() {
    ExprAst node = power();
    while (peek().kind == Token::Kind::Prime) {
      const std::size_t offset = advance().offset;
      node = unary_node(ExprAst::Kind::Star, std::move(node), offset);
    }
    return node;
  }

  ExprAst power() {
    ExprAst base = primary();
    if (peek().kind != Token::Kind::Caret) return base;
    const std::size_t offset = advance().offset;
    const Token& e = advance();
    if (e.kind != Token::Kind::Number || !e.integral) throw ParseError("exponent must be a non-negative integer", e.offset);
    if (e.number > kMaxExponent) {
      throw ParseError("exponent overflow (limit " + std::to_string(kMaxExponent) + ")", e.offset);
    }
    ExprAst node = unary_node(ExprAst::Kind::Power, std::move(base), offset);
    node.exponent = static_cast<unsigned>(e.number);
    return node;
  }

  ExprAst primary() {
    const Token& tok = advance();
    switch (tok.kind) {
      case Token::Kind::Number: {
        ExprAst node;
        node.kind = ExprAst::Kind::Literal;
        node.offset = tok.offset;
        node.value = tok.imaginary ? Complex(0.0, tok.number) : Complex(tok.number, 0.0);
        return node;
      }
      case Token::Kind::Variable: {
        ExprAst node;
        node.kind = ExprAst::Kind::Variable;
        node.offset = tok.offset;
        node.letter = resolve(tok);
        return node;
      }
      case Token::Kind::LParen: {
        ExprAst inner = sum();
        expect_rparen(tok.offset);
        return unary_node(ExprAst::Kind::Group, std::move(inner), tok.offset);
      }
      case Token::Kind::StarFn: {
        if (advance().kind != Token::Kind::LParen) throw ParseError("expected '(' after star", tok.offset);
        ExprAst inner = sum();
        expect_rparen(tok.offset);
        return unary_node(ExprAst::Kind::Star, std::move(inner), tok.offset);
      }
      case Token::Kind::End: throw ParseError("unexpected end of input", tok.offset);
      default: throw ParseError("unexpected token", tok.offset);
    }
  }

  void expect_rparen(std::size_t open) {
    if (peek().kind != Token::Kind::RParen) throw ParseError("unbalanced parenthesis opened at " + std::to_string(open), peek().offset);
    advance();
  }

  Letter resolve(const Token& tok) const {
    Letter l;
    if (tok.var_class == 'z') {
      if (sig_.arity_a != 0) throw ParseError("alias z<k> needs a signature without a-variables", tok.offset);
      l = Letter::x(tok.index);
    } else {
      l = tok.var_class == 'a' ? Letter::a(tok.index) : Letter::x(tok.index);
    }
    if (!sig_.contains(l)) throw ParseError("unknown variable " + to_string(l), tok.offset);
    return l;
  }

  std::vector<Token> tokens_;
  Signature sig_;
  std::size_t pos_ = 0;
};

void check_cap(const NcPolynomial& p, std::size_t cap) {
  if (p.terms().size() > cap) throw ResourceError("term count " + std::to_string(p.terms().size()) + " exceeds cap");
}

NcPolynomial multiply_capped(const NcPolynomial& l, const NcPolynomial& r, std::size_t cap) {
  if (l.terms().size() * r.terms().size() > cap) {
    throw ResourceError("product of " + std::to_string(l.terms().size()) + " and " + std::to_string(r.terms().size()) +
                        " terms exceeds cap");
  }
  NcPolynomial out = l * r;
  check_cap(out, cap);
  return out;
}

NcPolynomial lower_node(const ExprAst& node, const Signature& sig, std::size_t cap) {
  using K = ExprAst::Kind;
  switch (node.kind) {
    case K::Variable: return NcPolynomial::variable(sig, node.letter);
    case K::Literal: return NcPolynomial::constant(sig, node.value);
    case K::Group: return lower_node(node.children[0], sig, cap);
    case K::Star: return involute(lower_node(node.children[0], sig, cap));
    case K::Negate: return -lower_node(node.children[0], sig, cap);
    case K::Add: {
      NcPolynomial out = lower_node(node.children[0], sig, cap) + lower_node(node.children[1], sig, cap);
      check_cap(out, cap);
      return out;
    }
    case K::Subtract: {
      NcPolynomial out = lower_node(node.children[0], sig, cap) - lower_node(node.children[1], sig, cap);
      check_cap(out, cap);
      return out;
    }
    case K::Multiply:
      return multiply_capped(lower_node(node.children[0], sig, cap), lower_node(node.children[1], sig, cap), cap);
    case K::Power: {
      const NcPolynomial base = lower_node(node.children[0], sig, cap);
      NcPolynomial out = NcPolynomial::constant(sig, 1.0);
      for (unsigned k = 0; k < node.exponent; ++k) out = multiply_capped(out, base, cap);
      return out;
    }
  }
  return NcPolynomial(sig);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string out = "(" + format_double(c.real());
  out += c.imag() < 0 ? "-" : "+";
  out += format_double(std::abs(c.imag())) + "i)";
  return out;
}

}  // namespace

Expression parse(std::string_view src, Signature sig) {
  Parser parser(lex(src), sig);
  return Expression{sig, parser.parse_all()};
}

NcPolynomial lower(const Expression& expr, std::size_t term_cap) {
  return lower_node(expr.root, expr.signature, term_cap);
}

Signature infer_signature(std::string_view src) {
  Signature sig;
  std::uint32_t max_z = 0;
  for (const Token& tok : lex(src)) {
    if (tok.kind != Token::Kind::Variable) continue;
    if (tok.var_class == 'a') sig.arity_a = std::max(sig.arity_a, tok.index);
    if (tok.var_class == 'x') sig.arity_x = std::max(sig.arity_x, tok.index);
    if (tok.var_class == 'z') max_z = std::max(max_z, tok.index);
  }
  if (max_z > 0) {
    if (sig.arity_a != 0) throw ParseError("alias z<k> cannot be mixed with a-variables", 0);
    sig.arity_x = std::max(sig.arity_x, max_z);
  }
  return sig;
}

std::string to_string(const ExprAst& ast) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::Variable: return to_string(ast.letter);
    case K::Literal: return format_complex(ast.value);
    case K::Group: return to_string(ast.children[0]);
    case K::Star: return "star(" + to_string(ast.children[0]) + ")";
    case K::Negate: return "(-" + to_string(ast.children[0]) + ")";
    case K::Add: return "(" + to_string(ast.children[0]) + " + " + to_string(ast.children[1]) + ")";
    case K::Subtract: return "(" + to_string(ast.children[0]) + " - " + to_string(ast.children[1]) + ")";
    case K::Multiply: return "(" + to_string(ast.children[0]) + "*" + to_string(ast.children[1]) + ")";
    case K::Power: return "(" + to_string(ast.children[0]) + ")^" + std::to_string(ast.exponent);
  }
  return {};
}

std::string render(const NcPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Complex coeff = c;
    if (!first) {
      if (coeff.imag() == 0.0 && coeff.real() < 0) {
        out += " - ";
        coeff = -coeff;
      } else {
        out += " + ";
      }
    }
    std::string term;
    const bool unit = coeff == Complex(1.0, 0.0);
    if (!unit || w.empty()) term = format_complex(coeff);
    for (const auto& l : w.letters()) {
      if (!term.empty()) term += '*';
      term += to_string(l);
    }
    out += term;
    first = false;
  }
  return out;
}

}  // namespace ncconvex
