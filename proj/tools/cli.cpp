#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ncconvex/ncconvex.hpp"

namespace ncconvex::cli {

namespace {

struct Options {
  std::string expr;
  std::string series_file;
  std::string preset;
  std::string signature;
  std::string a_tuple;
  std::string x_tuple;
  std::string json_out;
  std::string witness_out;
  std::string verify_witness;
  std::string interval;
  std::string multiplicities;
  std::string atoms = "0.5:1";
  std::string path = "auto";
  std::string corpus;
  Eigen::Index size = 0;
  double epsilon = 0.5;
  std::size_t trials = 0;
  std::size_t convexity_trials = 200;
  std::uint64_t seed = 0;
  std::size_t degree_cap = 8;
  std::size_t points = 0;
  double tol = 1e-8;
  double radius = 0.0;
  double f0 = 0.0, f1 = 0.0, f2 = 2.0;
  bool g_transform = false;
};

/// Raised for bad flag combinations; maps to the usage exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("cannot read number '" + item + "'");
    }
  }
  return out;
}

Signature parse_signature_flag(const std::string& text) {
  const auto v = split_numbers(text);
  if (v.size() != 2 || v[0] < 0 || v[1] < 0) throw UsageError("--signature expects g_a,g_x");
  return {static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1])};
}

Interval parse_interval(const std::string& text, Interval fallback) {
  if (text.empty()) return fallback;
  const auto v = split_numbers(text);
  if (v.size() != 2 || !(v[0] < v[1])) throw UsageError("--interval expects lo,hi with lo < hi");
  return {v[0], v[1]};
}

std::vector<std::size_t> parse_multiplicities(const std::string& text, std::vector<std::size_t> fallback) {
  if (text.empty()) return fallback;
  std::vector<std::size_t> out;
  for (double v : split_numbers(text)) {
    if (v < 1) throw UsageError("multiplicities must be positive");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

DiscreteMeasure parse_atoms(const std::string& text) {
  std::vector<Atom> atoms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--atoms expects location:weight pairs");
    try {
      atoms.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw UsageError("cannot read atom '" + item + "'");
    }
  }
  return DiscreteMeasure(std::move(atoms));
}

ExtractionPath parse_path(const std::string& text) {
  if (text == "auto") return ExtractionPath::Auto;
  if (text == "exact") return ExtractionPath::Exact;
  if (text == "fourier") return ExtractionPath::Fourier;
  throw UsageError("--path must be auto, exact or fourier");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- function resolution

struct ResolvedFunction {
  NcFunction fn;
  Json descriptor;  // enough to rebuild fn from a witness file
};

std::optional<ResolvedFunction> function_from_descriptor(const Json& d) {
  if (d.contains("preset")) {
    auto fn = nc_preset(d.at("preset").get<std::string>());
    if (!fn) throw UsageError("unknown preset " + d.at("preset").get<std::string>());
    return ResolvedFunction{std::move(*fn), d};
  }
  if (d.contains("expr")) {
    const auto expr = d.at("expr").get<std::string>();
    const Signature sig = d.contains("signature") ? signature_from_json(d.at("signature")) : infer_signature(expr);
    return ResolvedFunction{polynomial_function(expr, parse_polynomial(expr, sig)), d};
  }
  if (d.contains("series")) return ResolvedFunction{series_function("series", series_from_json(d.at("series"))), d};
  return std::nullopt;
}

std::optional<ResolvedFunction> resolve_nc_function(const Options& o) {
  const int given = !o.preset.empty() + !o.expr.empty() + !o.series_file.empty();
  if (given > 1) throw UsageError("give only one of --preset, --expr, --series-file");
  if (!o.preset.empty()) return function_from_descriptor(Json{{"preset", o.preset}});
  if (!o.expr.empty()) {
    const Signature sig = o.signature.empty() ? infer_signature(o.expr) : parse_signature_flag(o.signature);
    return function_from_descriptor(Json{{"expr", o.expr}, {"signature", signature_to_json(sig)}});
  }
  if (!o.series_file.empty()) return function_from_descriptor(Json{{"series", read_json_file(o.series_file)}});
  return std::nullopt;
}

ResolvedFunction require_nc_function(const Options& o) {
  auto fn = resolve_nc_function(o);
  if (!fn) throw UsageError("a function is required (--preset, --expr or --series-file)");
  return std::move(*fn);
}

struct ResolvedScalar {
  ScalarFn fn;
  Json descriptor;
};

ResolvedScalar scalar_from_descriptor(const Json& d) {
  ScalarFn fn;
  if (d.contains("kraus")) {
    const Json& k = d.at("kraus");
    fn = kraus_function(k.at("f0").get<double>(), k.at("f1").get<double>(), k.at("f2").get<double>(),
                        parse_atoms(k.at("atoms").get<std::string>()));
  } else {
    const auto name = d.at("preset").get<std::string>();
    auto preset = scalar_preset(name);
    if (!preset) throw UsageError("unknown scalar preset " + name);
    fn = std::move(*preset);
  }
  if (d.value("g_transform", false)) fn = g_transform(fn);
  return {std::move(fn), d};
}

ResolvedScalar require_scalar(const Options& o) {
  if (o.preset.empty()) throw UsageError("--preset is required");
  return scalar_from_descriptor(Json{{"preset", o.preset}, {"g_transform", o.g_transform}});
}

HermTuple named_or_file_tuple(const std::string& source, std::size_t arity, LetterClass cls) {
  for (const std::string prefix : {"identity", "zero"}) {
    if (source.rfind(prefix, 0) == 0 && source.size() > prefix.size()) {
      const auto n = static_cast<Eigen::Index>(std::stol(source.substr(prefix.size())));
      const Matrix m = prefix == "identity" ? Matrix(Matrix::Identity(n, n)) : Matrix(Matrix::Zero(n, n));
      return HermTuple(n, MatrixTuple(arity, m), cls);
    }
  }
  return tuple_from_json(read_json_file(source), cls);
}

/// The a-point: from --a-tuple, or sampled in the unit ball at --size.
HermTuple resolve_a_tuple(const Options& o, const Signature& sig) {
  if (!o.a_tuple.empty()) {
    HermTuple a = named_or_file_tuple(o.a_tuple, sig.arity_a, LetterClass::A);
    if (a.arity() != sig.arity_a) throw UsageError("a-tuple arity does not match the signature");
    return a;
  }
  const Eigen::Index kappa = o.size > 0 ? o.size : 1;
  if (sig.arity_a == 0) return HermTuple(kappa, LetterClass::A);
  Rng rng(derive_seed(o.seed, 0xa0a0ULL));
  return sample_ball_point(sig.arity_a, kappa, 1.0, rng, LetterClass::A);
}

Json envelope(const std::string& command) { return Json{{"schema", kSchemaVersion}, {"command", command}}; }

int emit(const Options& o, Json doc, std::ostream& out, int code) {
  if (!o.json_out.empty()) write_json_file(o.json_out, doc);
  out << doc.dump(2) << '\n';
  return code;
}

std::string witness_path(const Options& o, const std::string& command) {
  return o.witness_out.empty() ? command + "-witness.json" : o.witness_out;
}

// ---------------------------------------------------------------- subcommands

int verify_nc_witness(const Options& o, const std::string& command, std::ostream& out) {
  const Json file = read_json_file(o.verify_witness);
  auto fn = resolve_nc_function(o);
  if (!fn && file.contains("function")) fn = function_from_descriptor(file.at("function"));
  if (!fn) throw UsageError("witness file names no function; pass --preset/--expr/--series-file");
  const ConvexityWitness w = witness_from_json(file.contains("witness") ? file.at("witness") : file);
  const double lowest = verify_witness(fn->fn, w);
  const bool violated = lowest < kWitnessThreshold;
  Json doc = envelope(command);
  doc["function"] = fn->descriptor;
  doc["verify"] = Json{{"min_eig", lowest}, {"violation_confirmed", violated}};
  return emit(o, std::move(doc), out, violated ? kFalsified : kPass);
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (!o.verify_witness.empty()) return verify_nc_witness(o, "eval", out);
  const auto fn = require_nc_function(o);
  const Signature& sig = fn.fn.signature;
  if (o.x_tuple.empty() && sig.arity_x > 0) throw UsageError("--x-tuple is required");
  std::optional<HermTuple> x;
  if (!o.x_tuple.empty()) x = named_or_file_tuple(o.x_tuple, sig.arity_x, LetterClass::X);
  std::optional<HermTuple> a;
  if (!o.a_tuple.empty()) a = named_or_file_tuple(o.a_tuple, sig.arity_a, LetterClass::A);
  const Eigen::Index n = x ? x->size() : a ? a->size() : (o.size > 0 ? o.size : 1);
  if (!a) a = HermTuple(n, LetterClass::A);
  if (!x) x = HermTuple(n, LetterClass::X);
  if (a->arity() != sig.arity_a || x->arity() != sig.arity_x) throw UsageError("tuple arity does not match signature");
  const Matrix value = fn.fn(*a, *x);
  Json doc = envelope("eval");
  doc["function"] = fn.descriptor;
  doc["n"] = n;
  doc["value"] = matrix_to_json(value);
  return emit(o, std::move(doc), out, kPass);
}

int cmd_convexity(const Options& o, std::ostream& out) {
  if (!o.verify_witness.empty()) return verify_nc_witness(o, "convexity", out);
  const auto fn = require_nc_function(o);
  const HermTuple a = resolve_a_tuple(o, fn.fn.signature);
  const auto levels = parse_multiplicities(o.multiplicities, {1});
  const ConvexityReport report =
      test_convexity_at_CA(fn.fn, a, o.epsilon, levels, o.trials ? o.trials : 200, o.seed);
  Json doc = envelope("convexity");
  doc["function"] = fn.descriptor;
  doc["a_tuple"] = tuple_to_json(a);
  doc["report"] = report_to_json(report);
  if (!report.pass && report.witness) {
    Json wfile = envelope("convexity");
    wfile["function"] = fn.descriptor;
    wfile["witness"] = witness_to_json(*report.witness);
    const std::string path = witness_path(o, "convexity");
    write_json_file(path, wfile);
    doc["witness_file"] = path;
  }
  return emit(o, std::move(doc), out, report.pass ? kPass : kFalsified);
}

int cmd_convexity1(const Options& o, std::ostream& out) {
  if (!o.verify_witness.empty()) {
    const Json file = read_json_file(o.verify_witness);
    const ResolvedScalar fn = o.preset.empty() && file.contains("function") ? scalar_from_descriptor(file.at("function"))
                                                                            : require_scalar(o);
    const ConvexityWitness1 w = witness1_from_json(file.contains("witness") ? file.at("witness") : file);
    const double lowest = min_eigenvalue(convexity_defect(fn.fn, w.a, w.b, w.t));
    const bool violated = lowest < kWitnessThreshold;
    Json doc = envelope("convexity1");
    doc["function"] = fn.descriptor;
    doc["verify"] = Json{{"min_eig", lowest}, {"violation_confirmed", violated}};
    return emit(o, std::move(doc), out, violated ? kFalsified : kPass);
  }
  const ResolvedScalar fn = require_scalar(o);
  const Interval interval = parse_interval(o.interval, {-1.0, 1.0});
  const ConvexityReport1 report =
      convexity_test_1var(fn.fn, interval, o.size > 0 ? o.size : 2, o.trials ? o.trials : 1000, o.seed);
  Json doc = envelope("convexity1");
  doc["function"] = fn.descriptor;
  doc["interval"] = Json::array({interval.lo, interval.hi});
  doc["report"] = report_to_json(report, "matrix_convexity_1var");
  if (!report.pass && report.witness) {
    Json wfile = envelope("convexity1");
    wfile["function"] = fn.descriptor;
    wfile["witness"] = witness_to_json(*report.witness);
    const std::string path = witness_path(o, "convexity1");
    write_json_file(path, wfile);
    doc["witness_file"] = path;
  }
  return emit(o, std::move(doc), out, report.pass ? kPass : kFalsified);
}

int cmd_monotone(const Options& o, std::ostream& out) {
  const ResolvedScalar fn = require_scalar(o);
  const Interval interval = parse_interval(o.interval, {-1.0, 1.0});
  const MonotoneReport report =
      loewner_monotone_test(fn.fn, interval, o.points ? o.points : 4, o.trials ? o.trials : 200, o.seed);
  Json doc = envelope("monotone");
  doc["function"] = fn.descriptor;
  doc["interval"] = Json::array({interval.lo, interval.hi});
  doc["report"] = report_to_json(report);
  return emit(o, std::move(doc), out, report.pass ? kPass : kFalsified);
}

int cmd_kraus(const Options& o, std::ostream& out) {
  const DiscreteMeasure mu = parse_atoms(o.atoms);
  const Interval interval = parse_interval(o.interval, {-0.9, 0.9});
  const ScalarFn scalar = kraus_function(o.f0, o.f1, o.f2, mu);
  const std::size_t points = o.points ? o.points : 11;
  Json sweep = Json::array();
  for (std::size_t k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.5 * (interval.lo + interval.hi)
                                 : interval.lo + (interval.hi - interval.lo) * static_cast<double>(k) /
                                                     static_cast<double>(points - 1);
    const Matrix b = Matrix::Constant(1, 1, t);
    sweep.push_back(Json{{"t", t}, {"kraus", kraus_eval(o.f0, o.f1, o.f2, mu, b)(0, 0).real()}, {"closed_form", scalar(t)}});
  }
  const ConvexityReport1 report =
      convexity_test_1var(scalar, interval, o.size > 0 ? o.size : 2, o.trials ? o.trials : 300, o.seed);
  Json doc = envelope("kraus");
  doc["function"] = Json{{"kraus", Json{{"f0", o.f0}, {"f1", o.f1}, {"f2", o.f2}, {"atoms", o.atoms}}}};
  doc["interval"] = Json::array({interval.lo, interval.hi});
  doc["sweep"] = std::move(sweep);
  doc["report"] = report_to_json(report, "matrix_convexity_1var");
  if (!report.pass && report.witness) {
    Json wfile = envelope("kraus");
    wfile["function"] = doc["function"];
    wfile["witness"] = witness_to_json(*report.witness);
    const std::string path = witness_path(o, "kraus");
    write_json_file(path, wfile);
    doc["witness_file"] = path;
  }
  return emit(o, std::move(doc), out, report.pass ? kPass : kFalsified);
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto fn = require_nc_function(o);
  const HermTuple a = resolve_a_tuple(o, fn.fn.signature);
  CertifyOptions options;
  options.epsilon = o.epsilon;
  options.samples = o.trials ? o.trials : 50;
  options.seed = o.seed;
  options.degree_cap = o.degree_cap;
  if (o.radius > 0) options.radius = o.radius;
  options.multiplicities = parse_multiplicities(o.multiplicities, {1, 2});
  options.convexity_trials = o.convexity_trials;
  options.path = parse_path(o.path);
  const CertificationReport report = certify_degree_two(fn.fn, a, options);
  Json doc = envelope("certify");
  doc["function"] = fn.descriptor;
  doc["a_tuple"] = tuple_to_json(a);
  doc["certification"] = report_to_json(report);
  if (report.verdict == Verdict::HypothesisFails && report.convexity.witness) {
    Json wfile = envelope("certify");
    wfile["function"] = fn.descriptor;
    wfile["witness"] = witness_to_json(*report.convexity.witness);
    const std::string path = witness_path(o, "certify");
    write_json_file(path, wfile);
    doc["witness_file"] = path;
  }
  return emit(o, std::move(doc), out, report.verdict == Verdict::ConsistentDegreeTwo ? kPass : kFalsified);
}

int cmd_axioms(const Options& o, std::ostream& out) {
  AxiomOptions options;
  options.samples = o.trials ? o.trials : 100;
  options.max_size = o.size > 0 ? o.size : 4;
  options.seed = o.seed;
  options.tolerance = o.tol;
  Json doc = envelope("axioms");
  bool pass = true;
  if (!o.corpus.empty()) {
    Json results = Json::array();
    for (const auto& entry : corpus_from_json(read_json_file(o.corpus))) {
      const NcFunction fn = polynomial_function(entry.name, parse_polynomial(entry.expr, entry.signature));
      const AxiomReport report = check_nc_function_axioms(fn, options);
      pass = pass && report.pass;
      results.push_back(Json{{"name", entry.name}, {"report", report_to_json(report)}});
    }
    doc["corpus"] = o.corpus;
    doc["results"] = std::move(results);
  } else {
    const auto fn = require_nc_function(o);
    const AxiomReport report = check_nc_function_axioms(fn.fn, options);
    pass = report.pass;
    doc["function"] = fn.descriptor;
    doc["report"] = report_to_json(report);
  }
  return emit(o, std::move(doc), out, pass ? kPass : kFalsified);
}

void add_function_flags(CLI::App* sub, Options& o) {
  sub->add_option("--expr", o.expr, "nc polynomial expression");
  sub->add_option("--series-file", o.series_file, "JSON power series file");
  sub->add_option("--preset", o.preset, "named function");
  sub->add_option("--signature", o.signature, "arities g_a,g_x (inferred from --expr when absent)");
}

void add_common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--trials", o.trials, "number of trials / samples");
  sub->add_option("--size", o.size, "matrix size");
  sub->add_option("--json-out", o.json_out, "also write the JSON report here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"ncconvex: matrix convexity and degree certification for nc functions"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate a function at tuples");
  add_function_flags(eval, o);
  add_common_flags(eval, o);
  eval->add_option("--a-tuple", o.a_tuple, "a-tuple JSON file, identity<n> or zero<n>");
  eval->add_option("--x-tuple", o.x_tuple, "x-tuple JSON file, identity<n> or zero<n>");
  eval->add_option("--verify-witness", o.verify_witness, "re-verify a convexity witness file");

  auto* convexity = app.add_subcommand("convexity", "matrix convexity in x at (C_A, 0)");
  add_function_flags(convexity, o);
  add_common_flags(convexity, o);
  convexity->add_option("--a-tuple", o.a_tuple, "a-tuple JSON file");
  convexity->add_option("--epsilon", o.epsilon, "x-ball radius");
  convexity->add_option("--multiplicities", o.multiplicities, "C_A levels, e.g. 1,2,3");
  convexity->add_option("--witness-out", o.witness_out, "witness file path on failure");
  convexity->add_option("--verify-witness", o.verify_witness, "re-verify a witness file");

  auto* convexity1 = app.add_subcommand("convexity1", "one-variable matrix convexity");
  add_common_flags(convexity1, o);
  convexity1->add_option("--preset", o.preset, "scalar preset");
  convexity1->add_flag("--g-transform", o.g_transform, "apply t -> (f(t) - f(0))/t first");
  convexity1->add_option("--interval", o.interval, "sampling interval lo,hi");
  convexity1->add_option("--witness-out", o.witness_out, "witness file path on failure");
  convexity1->add_option("--verify-witness", o.verify_witness, "re-verify a witness file");

  auto* monotone = app.add_subcommand("monotone", "operator monotonicity via Loewner matrices");
  add_common_flags(monotone, o);
  monotone->add_option("--preset", o.preset, "scalar preset");
  monotone->add_flag("--g-transform", o.g_transform, "apply t -> (f(t) - f(0))/t first");
  monotone->add_option("--interval", o.interval, "interval lo,hi");
  monotone->add_option("--points", o.points, "points per Loewner matrix");

  auto* kraus = app.add_subcommand("kraus", "Kraus representation sweep and convexity check");
  add_common_flags(kraus, o);
  kraus->add_option("--f0", o.f0, "f(0)");
  kraus->add_option("--f1", o.f1, "f'(0)");
  kraus->add_option("--f2", o.f2, "f''(0)");
  kraus->add_option("--atoms", o.atoms, "measure atoms location:weight,...");
  kraus->add_option("--interval", o.interval, "interval lo,hi inside (-1, 1)");
  kraus->add_option("--points", o.points, "sweep points");
  kraus->add_option("--witness-out", o.witness_out, "witness file path on failure");

  auto* certify = app.add_subcommand("certify", "slice certification of x-degree <= 2");
  add_function_flags(certify, o);
  add_common_flags(certify, o);
  certify->add_option("--a-tuple", o.a_tuple, "a-tuple JSON file");
  certify->add_option("--epsilon", o.epsilon, "x-ball radius");
  certify->add_option("--degree-cap", o.degree_cap, "highest slice coefficient extracted");
  certify->add_option("--radius", o.radius, "extraction radius in z (default epsilon/4)");
  certify->add_option("--multiplicities", o.multiplicities, "C_A levels, default 1,2");
  certify->add_option("--convexity-trials", o.convexity_trials, "trials per level for the convexity subtest");
  certify->add_option("--path", o.path, "coefficient extraction: auto, exact or fourier");
  certify->add_option("--witness-out", o.witness_out, "witness file path on failure");

  auto* axioms = app.add_subcommand("axioms", "direct-sum and unitary-equivalence checks");
  add_function_flags(axioms, o);
  add_common_flags(axioms, o);
  axioms->add_option("--tol", o.tol, "deviation tolerance");
  axioms->add_option("--corpus", o.corpus, "check every polynomial of a corpus file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (convexity->parsed()) return cmd_convexity(o, out);
    if (convexity1->parsed()) return cmd_convexity1(o, out);
    if (monotone->parsed()) return cmd_monotone(o, out);
    if (kraus->parsed()) return cmd_kraus(o, out);
    if (certify->parsed()) return cmd_certify(o, out);
    if (axioms->parsed()) return cmd_axioms(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace ncconvex::cli
