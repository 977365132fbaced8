#include "ncconvex/presets.hpp"

#include <algorithm>
#include <cmath>

#include "ncconvex/errors.hpp"
#include "ncconvex/expr_parser.hpp"

namespace ncconvex {

namespace {

constexpr Signature kXOnly{0, 1};
constexpr Signature kAX{1, 1};

struct PolynomialPreset {
  std::string_view name;
  Signature sig;
  std::string_view expr;
};

constexpr PolynomialPreset kPolynomialPresets[] = {
    {"square", kXOnly, "x1^2"},
    {"quartic", kXOnly, "x1^4"},
    {"mixed-ax", kAX, "a1*x1*a1 + x1*a1*x1 + x1^2"},
    {"quad-ax", kAX, "x1^2 + a1*x1 + x1*a1 + a1^3"},
};

}  // namespace

NcFunction kraus_lift(double f0, double f1, double f2, const DiscreteMeasure& mu, std::size_t truncation) {
  if (truncation < 2) throw DomainError("Kraus lift truncation must be at least 2");
  double top = 0.0;
  for (const auto& atom : mu.atoms()) top = std::max(top, std::abs(atom.location));

  NcFunction fn;
  fn.name = "kraus";
  fn.signature = kXOnly;
  fn.radius = top > 0 ? 1.0 / top : std::numeric_limits<double>::infinity();
  const auto atoms = mu.atoms();
  fn.evaluate = [=](const MatrixTuple&, const MatrixTuple& x, Eigen::Index n) {
    const Matrix identity = Matrix::Identity(n, n);
    const Matrix& b = x[0];
    const Matrix b2 = b * b;
    Matrix kernel = Matrix::Zero(n, n);
    for (const auto& atom : atoms) {
      if (atom.weight == 0.0) continue;
      kernel += atom.weight * (identity - atom.location * b).partialPivLu().solve(b2);
    }
    return Matrix(f0 * identity + f1 * b + 0.5 * f2 * kernel);
  };

  std::vector<MatrixNcPolynomial> parts;
  parts.reserve(truncation + 1);
  const Letter x1 = Letter::x(1);
  for (std::size_t i = 0; i <= truncation; ++i) {
    Complex c{};
    if (i == 0) {
      c = f0;
    } else if (i == 1) {
      c = f1;
    } else {
      double moment = 0.0;
      for (const auto& atom : atoms) moment += atom.weight * std::pow(atom.location, static_cast<double>(i - 2));
      c = 0.5 * f2 * moment;
    }
    parts.emplace_back(NcPolynomial::monomial(kXOnly, Word(std::vector<Letter>(i, x1)), c));
  }
  fn.series = NcPowerSeries(std::move(parts), fn.radius);
  return fn;
}

NcFunction trace_evaluator(const Signature& sig) {
  if (sig.arity_x == 0 && sig.arity_a == 0) throw SignatureError("trace evaluator needs at least one variable");
  NcFunction fn;
  fn.name = "trace";
  fn.signature = sig;
  fn.evaluate = [](const MatrixTuple& a, const MatrixTuple& x, Eigen::Index n) {
    const Matrix& first = x.empty() ? a.front() : x.front();
    return Matrix(first.trace() * Matrix::Identity(n, n));
  };
  return fn;
}

NcFunction identity_evaluator(const Signature& sig) {
  NcFunction fn;
  fn.name = "identity";
  fn.signature = sig;
  fn.evaluate = [](const MatrixTuple&, const MatrixTuple&, Eigen::Index n) { return Matrix(Matrix::Identity(n, n)); };
  return fn;
}

std::optional<std::pair<Signature, std::string>> preset_expression(std::string_view name) {
  for (const auto& p : kPolynomialPresets) {
    if (p.name == name) return std::make_pair(p.sig, std::string(p.expr));
  }
  return std::nullopt;
}

std::optional<NcFunction> nc_preset(std::string_view name) {
  if (auto poly = preset_expression(name)) {
    return polynomial_function(std::string(name), parse_polynomial(poly->second, poly->first));
  }
  if (name == "kraus-halfmass") {
    NcFunction fn = kraus_lift(0.0, 0.0, 2.0, DiscreteMeasure::point_mass(0.5));
    fn.name = "kraus-halfmass";
    return fn;
  }
  if (name == "trace") return trace_evaluator(kXOnly);
  if (name == "identity") return identity_evaluator(kXOnly);
  return std::nullopt;
}

std::vector<std::string> nc_preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPolynomialPresets) out.emplace_back(p.name);
  out.insert(out.end(), {"kraus-halfmass", "trace", "identity"});
  return out;
}

std::optional<ScalarFn> scalar_preset(std::string_view name) {
  ScalarFn fn;
  fn.name = std::string(name);
  if (name == "identity") {
    fn.f = [](double t) { return t; };
    fn.df = [](double) { return 1.0; };
  } else if (name == "square") {
    fn.f = [](double t) { return t * t; };
    fn.df = [](double t) { return 2 * t; };
  } else if (name == "cube") {
    fn.f = [](double t) { return t * t * t; };
    fn.df = [](double t) { return 3 * t * t; };
  } else if (name == "quartic") {
    fn.f = [](double t) { return t * t * t * t; };
    fn.df = [](double t) { return 4 * t * t * t; };
  } else if (name == "sqrt") {
    fn.f = [](double t) { return std::sqrt(t); };
    fn.df = [](double t) { return 0.5 / std::sqrt(t); };
    fn.domain = {0.0, std::numeric_limits<double>::infinity()};
  } else if (name == "kraus-halfmass") {
    fn = kraus_function(0.0, 0.0, 2.0, DiscreteMeasure::point_mass(0.5));
    fn.name = "kraus-halfmass";
  } else {
    return std::nullopt;
  }
  return fn;
}

std::vector<std::string> scalar_preset_names() {
  return {"identity", "square", "cube", "quartic", "sqrt", "kraus-halfmass"};
}

}  // namespace ncconvex
