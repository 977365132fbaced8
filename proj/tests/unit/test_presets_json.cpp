#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "ncconvex/expr_parser.hpp"
#include "ncconvex/json_io.hpp"
#include "ncconvex/presets.hpp"

using namespace ncconvex;

TEST(Presets, AllNamesResolve) {
  for (const auto& name : nc_preset_names()) EXPECT_TRUE(nc_preset(name).has_value()) << name;
  for (const auto& name : scalar_preset_names()) EXPECT_TRUE(scalar_preset(name).has_value()) << name;
  EXPECT_FALSE(nc_preset("nope").has_value());
  EXPECT_FALSE(scalar_preset("nope").has_value());
}

TEST(Presets, KrausLiftMatchesScalarOnOneByOne) {
  const NcFunction lift = *nc_preset("kraus-halfmass");
  const ScalarFn scalar = *scalar_preset("kraus-halfmass");
  for (double t : {-0.8, -0.1, 0.0, 0.4, 0.95}) {
    const Matrix got = lift(HermTuple(1, LetterClass::A), HermTuple(MatrixTuple{Matrix::Constant(1, 1, t)}));
    EXPECT_NEAR(got(0, 0).real(), scalar(t), 1e-14);
    EXPECT_NEAR(scalar(t), t * t / (1 - 0.5 * t), 1e-14);
  }
  EXPECT_DOUBLE_EQ(lift.radius, 2.0);
}

TEST(Json, MatrixAndTupleRoundTrip) {
  Rng rng(1);
  const Matrix m = Matrix::Random(2, 3);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  const HermTuple t(3, MatrixTuple{gaussian_hermitian(3, rng), gaussian_hermitian(3, rng)});
  const HermTuple back = tuple_from_json(tuple_to_json(t));
  ASSERT_EQ(back.arity(), 2u);
  EXPECT_EQ(back[0], t[0]);
  EXPECT_EQ(back[1], t[1]);
  EXPECT_EQ(tuple_from_json(tuple_to_json(HermTuple(4))).size(), 4);
}

TEST(Json, PolynomialRoundTrip) {
  const NcPolynomial p = parse_polynomial("(2-3i)*a1*x1 + x1^2 - 0.125", {1, 1});
  EXPECT_EQ(polynomial_from_json(polynomial_to_json(p)), p);
}

TEST(Json, SeriesFromGrid) {
  const Json j = Json::parse(R"({"signature": {"g_a": 0, "g_x": 1}, "radius": 2.0,
                                 "parts": [[["1"]], [["x1"]], [["0.5*x1^2"]]]})");
  const NcPowerSeries s = series_from_json(j);
  EXPECT_EQ(s.truncation_order(), 2u);
  EXPECT_EQ(s.radius(), 2.0);
  EXPECT_THROW(series_from_json(Json::parse(R"({"signature": {"g_a": 0, "g_x": 1}, "parts": [[["x1"]]]})")),
               DomainError);
}

TEST(Json, WitnessRoundTrip) {
  const NcFunction f = *nc_preset("quartic");
  const ConvexityReport r = test_convexity_at_A(f, HermTuple(2, LetterClass::A), 1.0, 1000, 7);
  ASSERT_TRUE(r.witness.has_value());
  const Json j = witness_to_json(*r.witness);
  const ConvexityWitness w = witness_from_json(Json::parse(j.dump()));
  EXPECT_NEAR(verify_witness(f, w), verify_witness(f, *r.witness), 1e-12);
  EXPECT_EQ(witness_to_json(w).dump(), j.dump());
}

TEST(Json, ReportIsStableAndNullsNonFinite) {
  ConvexityReport r;
  r.epsilon = 0.5;
  const Json j = report_to_json(r);
  EXPECT_TRUE(j.at("min_eig").is_null());
  EXPECT_EQ(j.dump(), report_to_json(r).dump());
}

TEST(Json, CorpusParses) {
  std::ifstream in(NCCONVEX_CORPUS);
  const auto corpus = corpus_from_json(Json::parse(in));
  EXPECT_GE(corpus.size(), 8u);
  for (const auto& e : corpus) EXPECT_NO_THROW(parse_polynomial(e.expr, e.signature)) << e.name;
}
