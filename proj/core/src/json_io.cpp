#include "ncconvex/json_io.hpp"

#include "ncconvex/errors.hpp"
#include "ncconvex/expr_parser.hpp"

namespace ncconvex {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ShapeError(std::string("JSON object is missing \"") + key + "\"");
  return j.at(key);
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json descriptor_to_json(const AlphaDescriptor& d) { return Json{{"m", d.m}, {"kappa", d.kappa}}; }

}  // namespace

Json signature_to_json(const Signature& sig) { return Json{{"g_a", sig.arity_a}, {"g_x", sig.arity_x}}; }

Signature signature_from_json(const Json& j) {
  return Signature{require(j, "g_a").get<std::uint32_t>(), require(j, "g_x").get<std::uint32_t>()};
}

Json polynomial_to_json(const NcPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back(Json{{"word", w.str()}, {"re", c.real()}, {"im", c.imag()}});
  return Json{{"signature", signature_to_json(p.signature())}, {"terms", std::move(terms)}};
}

NcPolynomial polynomial_from_json(const Json& j) {
  const Signature sig = signature_from_json(require(j, "signature"));
  NcPolynomial out(sig);
  for (const auto& term : require(j, "terms")) {
    const Word w = Word::parse(require(term, "word").get<std::string>());
    const Complex c(require(term, "re").get<double>(), term.value("im", 0.0));
    out += NcPolynomial::monomial(sig, w, c);
  }
  return out;
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ShapeError("matrix JSON must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ShapeError("ragged matrix JSON");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ShapeError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

Vector vector_from_json(const Json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& e = j[k];
    v(static_cast<Eigen::Index>(k)) = e.is_number() ? Complex(e.get<double>(), 0.0)
                                                    : Complex(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return v;
}

Json real_vector_to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json tuple_to_json(const HermTuple& t) {
  Json entries = Json::array();
  for (const auto& m : t.entries()) entries.push_back(matrix_to_json(m));
  return Json{{"n", t.size()}, {"entries", std::move(entries)}};
}

HermTuple tuple_from_json(const Json& j, LetterClass cls) {
  const auto n = require(j, "n").get<Eigen::Index>();
  MatrixTuple entries;
  for (const auto& e : require(j, "entries")) entries.push_back(matrix_from_json(e));
  // transported tuples may have lost a few ulps of Hermiticity
  return HermTuple(n, std::move(entries), cls, 1e-9);
}

MatrixNcPolynomial matrix_polynomial_from_json(const Json& grid, const Signature& sig) {
  Json rows = grid;
  if (rows.is_string() || rows.is_object()) rows = Json::array({Json::array({grid})});
  if (!rows.is_array() || rows.empty()) throw ShapeError("matrix polynomial JSON must be a non-empty grid");
  const std::size_t nrows = rows.size();
  const std::size_t ncols = rows.front().size();
  std::vector<NcPolynomial> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != ncols) throw ShapeError("ragged matrix polynomial grid");
    for (const auto& e : row) {
      entries.push_back(e.is_string() ? parse_polynomial(e.get<std::string>(), sig) : polynomial_from_json(e));
    }
  }
  return MatrixNcPolynomial(nrows, ncols, std::move(entries));
}

NcPowerSeries series_from_json(const Json& j) {
  const Signature sig = signature_from_json(require(j, "signature"));
  const double radius = j.contains("radius") && !j.at("radius").is_null() ? j.at("radius").get<double>()
                                                                           : 1.0;
  if (j.contains("expr")) {
    NcPowerSeries s = x_homogeneous_parts(matrix_polynomial_from_json(j.at("expr"), sig));
    if (j.contains("radius")) s.set_radius(radius);
    return s;
  }
  std::vector<MatrixNcPolynomial> parts;
  for (const auto& part : require(j, "parts")) parts.push_back(matrix_polynomial_from_json(part, sig));
  return NcPowerSeries(std::move(parts), radius);
}

std::vector<CorpusEntry> corpus_from_json(const Json& j) {
  if (!j.is_array()) throw ShapeError("corpus must be a JSON array");
  std::vector<CorpusEntry> out;
  for (const auto& e : j) {
    out.push_back({require(e, "name").get<std::string>(), signature_from_json(require(e, "signature")),
                   require(e, "expr").get<std::string>()});
  }
  return out;
}

// ---------------------------------------------------------------- witnesses

Json witness_to_json(const ConvexityWitness& w) {
  return Json{{"alpha", descriptor_to_json(w.descriptor)},
              {"a_tuple", tuple_to_json(w.alpha)},
              {"x", tuple_to_json(w.x)},
              {"y", tuple_to_json(w.y)},
              {"t", w.t},
              {"shrink", w.shrink},
              {"defect_eig", real_vector_to_json(w.defect_eig)}};
}

namespace {

Eigen::VectorXd real_vector_from_json(const Json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

}  // namespace

ConvexityWitness witness_from_json(const Json& j) {
  ConvexityWitness w;
  if (j.contains("alpha")) {
    w.descriptor.m = j.at("alpha").value("m", std::size_t{1});
    w.descriptor.kappa = j.at("alpha").value("kappa", Eigen::Index{0});
  }
  w.alpha = tuple_from_json(require(j, "a_tuple"), LetterClass::A);
  w.x = tuple_from_json(require(j, "x"));
  w.y = tuple_from_json(require(j, "y"));
  w.t = require(j, "t").get<double>();
  w.shrink = j.value("shrink", 1.0);
  if (j.contains("defect_eig")) w.defect_eig = real_vector_from_json(j.at("defect_eig"));
  return w;
}

Json witness_to_json(const ConvexityWitness1& w) {
  return Json{{"tuples", Json{{"a", matrix_to_json(w.a)}, {"b", matrix_to_json(w.b)}}},
              {"t", w.t},
              {"defect_eig", real_vector_to_json(w.defect_eig)}};
}

ConvexityWitness1 witness1_from_json(const Json& j) {
  ConvexityWitness1 w;
  const Json& tuples = require(j, "tuples");
  w.a = matrix_from_json(require(tuples, "a"));
  w.b = matrix_from_json(require(tuples, "b"));
  w.t = require(j, "t").get<double>();
  if (j.contains("defect_eig")) w.defect_eig = real_vector_from_json(j.at("defect_eig"));
  return w;
}

// ---------------------------------------------------------------- reports

Json report_to_json(const ConvexityReport1& r, const std::string& test) {
  Json out{{"test", test}, {"pass", r.pass}, {"min_eig", finite_or_null(r.min_eig)}, {"trials", r.trials}};
  if (r.witness) out["witness"] = witness_to_json(*r.witness);
  return out;
}

Json report_to_json(const MonotoneReport& r) {
  Json out{{"test", "loewner_monotone"}, {"pass", r.pass}, {"min_eig", finite_or_null(r.min_eig)},
           {"trials", r.trials}};
  if (r.witness) {
    out["witness"] = Json{{"points", r.witness->points},
                          {"loewner", real_matrix_to_json(r.witness->loewner)},
                          {"min_eig", r.witness->min_eig}};
  }
  return out;
}

Json report_to_json(const ConvexityReport& r) {
  Json levels = Json::array();
  for (const auto& d : r.levels) levels.push_back(descriptor_to_json(d));
  Json out{{"test", "convexity_in_x"},
           {"pass", r.pass},
           {"min_eig", finite_or_null(r.min_defect_eig)},
           {"trials", r.trials},
           {"hermitian_ok", r.hermitian_ok},
           {"epsilon", r.epsilon},
           {"alpha", levels.size() == 1 ? levels.front() : levels},
           {"genuine_violation", r.genuine_violation()}};
  if (r.witness) out["witness"] = witness_to_json(*r.witness);
  return out;
}

Json report_to_json(const AxiomReport& r) {
  auto counterexample = [](const AxiomCounterexample& c, bool with_w, bool with_u) {
    Json out{{"z_a", tuple_to_json(c.z_a)}, {"z_x", tuple_to_json(c.z_x)}};
    if (with_w) {
      out["w_a"] = tuple_to_json(c.w_a);
      out["w_x"] = tuple_to_json(c.w_x);
    }
    if (with_u) out["unitary"] = matrix_to_json(c.unitary);
    out["deviation"] = c.deviation;
    return out;
  };
  Json out{{"test", "nc_function_axioms"},
           {"pass", r.pass},
           {"samples", r.samples},
           {"max_direct_sum_deviation", r.max_direct_sum_deviation},
           {"max_unitary_deviation", r.max_unitary_deviation}};
  if (r.direct_sum_witness || r.unitary_witness) {
    Json witness = Json::object();
    if (r.direct_sum_witness) witness["direct_sum"] = counterexample(*r.direct_sum_witness, true, false);
    if (r.unitary_witness) witness["unitary"] = counterexample(*r.unitary_witness, false, true);
    out["witness"] = std::move(witness);
  }
  return out;
}

Json coefficients_to_json(const SliceCoefficients& c) {
  Json coeffs = Json::array();
  for (const auto& v : c.coeffs) coeffs.push_back(complex_to_json(v));
  return Json{{"path", to_string(c.path)}, {"coeffs", std::move(coeffs)}, {"residual", c.residual}};
}

Json report_to_json(const CertificationReport& r) {
  Json out{{"verdict", to_string(r.verdict)},
           {"samples", r.samples},
           {"skipped", r.skipped},
           {"max_high_order_coeff", r.max_high_order_coeff},
           {"max_residual", r.max_residual},
           {"radius", r.radius},
           {"convexity", report_to_json(r.convexity)}};
  if (r.verdict == Verdict::HypothesisFails && r.convexity.witness) {
    out["witness"] = witness_to_json(*r.convexity.witness);
  } else if (r.witness) {
    Json coeffs = Json::array();
    for (const auto& v : r.witness->coeffs) coeffs.push_back(complex_to_json(v));
    out["witness"] = Json{{"alpha", descriptor_to_json(r.witness->descriptor)},
                          {"a_tuple", tuple_to_json(r.witness->alpha)},
                          {"x", tuple_to_json(r.witness->x)},
                          {"v", vector_to_json(r.witness->v)},
                          {"i", r.witness->index},
                          {"c_i", complex_to_json(r.witness->coeff)},
                          {"coeffs", std::move(coeffs)}};
  }
  if (!r.log.empty()) out["log"] = r.log;
  return out;
}

Json report_to_json(const SliceConvexityReport& r) {
  Json out{{"test", "slice_convexity"}, {"pass", r.pass}, {"min_eig", finite_or_null(r.min_defect_eig)},
           {"trials", r.trials}};
  if (r.witness) {
    out["witness"] = Json{{"T", matrix_to_json(r.witness->t_left)},
                          {"T_tilde", matrix_to_json(r.witness->t_right)},
                          {"t", r.witness->t},
                          {"defect_eig", real_vector_to_json(r.witness->defect_eig)}};
  }
  return out;
}

}  // namespace ncconvex
