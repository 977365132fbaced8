#pragma once

// JSON wire formats.
//
//   polynomial  {"signature": {"g_a", "g_x"}, "terms": [{"word": "a1 x2", "re", "im"}]}
//   matrix      [[[re, im], ...], ...]                        (row major)
//   tuple       {"n": int, "entries": [matrix, ...]}
//   series      {"signature", "radius", "parts": [[["expr", ...], ...], ...]}
//   corpus      [{"name", "signature", "expr"}, ...]
//
// Reports are emitted with a fixed key order so identical runs give
// byte-identical output.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncconvex/convexity.hpp"
#include "ncconvex/evaluation.hpp"
#include "ncconvex/free_algebra.hpp"
#include "ncconvex/matrix_domain.hpp"
#include "ncconvex/one_var.hpp"
#include "ncconvex/slice_cert.hpp"

namespace ncconvex {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "ncconvex/1";

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

Json polynomial_to_json(const NcPolynomial& p);
NcPolynomial polynomial_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json real_matrix_to_json(const Eigen::MatrixXd& m);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json real_vector_to_json(const Eigen::VectorXd& v);
Json complex_to_json(Complex c);

Json tuple_to_json(const HermTuple& t);
HermTuple tuple_from_json(const Json& j, LetterClass cls = LetterClass::X);

/// Grid of scalar expressions (or polynomial objects) over a signature.
MatrixNcPolynomial matrix_polynomial_from_json(const Json& grid, const Signature& sig);
NcPowerSeries series_from_json(const Json& j);

struct CorpusEntry {
  std::string name;
  Signature signature;
  std::string expr;
};
std::vector<CorpusEntry> corpus_from_json(const Json& j);

Json report_to_json(const ConvexityReport1& r, const std::string& test);
Json report_to_json(const MonotoneReport& r);
Json report_to_json(const ConvexityReport& r);
Json report_to_json(const AxiomReport& r);
Json report_to_json(const CertificationReport& r);
Json report_to_json(const SliceConvexityReport& r);
Json coefficients_to_json(const SliceCoefficients& c);

Json witness_to_json(const ConvexityWitness& w);
ConvexityWitness witness_from_json(const Json& j);
Json witness_to_json(const ConvexityWitness1& w);
ConvexityWitness1 witness1_from_json(const Json& j);

}  // namespace ncconvex
