#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ncconvex/json_io.hpp"

using namespace ncconvex;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ncconvex");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json read(const std::string& path) {
  std::ifstream in(path);
  return Json::parse(in);
}

}  // namespace

TEST(Cli, EvalIdentity) {
  const Result r = run({"eval", "--expr", "x1", "--x-tuple", "identity3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j.at("schema"), "ncconvex/1");
  EXPECT_EQ(j.at("command"), "eval");
  EXPECT_EQ(matrix_from_json(j.at("value")), Matrix(Matrix::Identity(3, 3)));
}

TEST(Cli, EvalFromTupleFile) {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 1) = z(1, 0) = 1.0;
  {
    std::ofstream f("cli_x.json");
    f << tuple_to_json(HermTuple(MatrixTuple{z})).dump();
  }
  const Result r = run({"eval", "--expr", "x1^2 + 2", "--x-tuple", "cli_x.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(matrix_from_json(r.json().at("value")), Matrix(3.0 * Matrix::Identity(2, 2)));
}

TEST(Cli, CertifySquareIsConsistent) {
  const Result r = run({"certify", "--expr", "x1^2", "--signature", "0,1", "--size", "3", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("certification").at("verdict"), "CONSISTENT_DEGREE_<=2");
}

TEST(Cli, QuarticConvexity1FailsAndWitnessReverifies) {
  const Result r = run({"convexity1", "--preset", "quartic", "--size", "2", "--seed", "7", "--witness-out", "q1.json"});
  ASSERT_EQ(r.code, 1) << r.err;
  EXPECT_EQ(r.json().at("witness_file"), "q1.json");
  const Json w = read("q1.json");
  EXPECT_EQ(w.at("function").at("preset"), "quartic");

  const Result again = run({"convexity1", "--verify-witness", "q1.json"});
  EXPECT_EQ(again.code, 1) << again.err;
  EXPECT_TRUE(again.json().at("verify").at("violation_confirmed").get<bool>());
}

TEST(Cli, QuarticConvexityWitnessVerifiesThroughEval) {
  const Result r = run({"convexity", "--preset", "quartic", "--size", "2", "--epsilon", "1", "--trials", "1000",
                     "--seed", "7", "--witness-out", "q.json"});
  ASSERT_EQ(r.code, 1) << r.err;
  for (const char* sub : {"eval", "convexity"}) {
    const Result v = run({sub, "--verify-witness", "q.json"});
    EXPECT_EQ(v.code, 1) << v.err;
    EXPECT_LT(v.json().at("verify").at("min_eig").get<double>(), -1e-6);
  }
}

TEST(Cli, MonotoneAndKraus) {
  const Result sqrt_run = run({"monotone", "--preset", "sqrt", "--interval", "0,4", "--points", "4"});
  EXPECT_EQ(sqrt_run.code, 0) << sqrt_run.err;
  const Result g = run({"monotone", "--preset", "kraus-halfmass", "--g-transform", "--interval", "-0.9,0.9", "--points", "5"});
  EXPECT_EQ(g.code, 0) << g.err;
  const Result k = run({"kraus", "--f2", "2", "--atoms", "0.5:1", "--points", "5"});
  ASSERT_EQ(k.code, 0) << k.err;
  for (const auto& row : k.json().at("sweep")) {
    EXPECT_NEAR(row.at("kraus").get<double>(), row.at("closed_form").get<double>(), 1e-12);
  }
}

TEST(Cli, AxiomsOverCorpus) {
  const Result r = run({"axioms", "--corpus", NCCONVEX_CORPUS, "--trials", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Result trace = run({"axioms", "--preset", "trace"});
  EXPECT_EQ(trace.code, 1);
}

TEST(Cli, ByteIdenticalRepeats) {
  const std::vector<std::string> args{"certify", "--preset", "mixed-ax", "--size", "2", "--seed", "11", "--trials", "5"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, JsonOutMatchesStdout) {
  const Result r = run({"eval", "--preset", "square", "--x-tuple", "identity2", "--json-out", "eval_out.json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(read("eval_out.json"), r.json());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "--expr", "x1 x2", "--x-tuple", "identity2"}).code, 2);
  EXPECT_EQ(run({"convexity", "--preset", "nope"}).code, 2);
  EXPECT_EQ(run({"convexity1", "--preset", "sqrt", "--interval", "1,0"}).code, 2);
  EXPECT_EQ(run({"eval", "--preset", "square", "--expr", "x1"}).code, 2);
  const Result domain = run({"kraus", "--atoms", "0.5:0.3"});
  EXPECT_EQ(domain.code, 2);
  EXPECT_FALSE(domain.err.empty());
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }
