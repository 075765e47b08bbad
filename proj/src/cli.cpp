#include "tracewick/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracewick/band.hpp"
#include "tracewick/json_io.hpp"
#include "tracewick/limits.hpp"
#include "tracewick/montecarlo.hpp"
#include "tracewick/oracle.hpp"
#include "tracewick/topology.hpp"
#include "tracewick/word.hpp"

namespace tracewick {

namespace {

using Clock = std::chrono::steady_clock;

int default_workers() {
  const char* env = std::getenv("TRACEWICK_WORKERS");
  if (!env) return 1;
  char* end = nullptr;
  const long parsed = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || parsed < 1 || parsed > 1024) return 1;
  return static_cast<int>(parsed);
}

// Word lists are written as one argument with comma separators
// ("G1 G1*, G2 G2*"); multiple positionals are joined the same way.
std::vector<Word> parse_word_list(const std::vector<std::string>& args) {
  std::string joined;
  for (const std::string& a : args) {
    if (!joined.empty()) joined += ",";
    joined += a;
  }
  std::vector<Word> words;
  std::size_t begin = 0;
  while (begin <= joined.size()) {
    std::size_t end = joined.find(',', begin);
    if (end == std::string::npos) end = joined.size();
    const std::string segment = joined.substr(begin, end - begin);
    try {
      words.push_back(parse_word(segment));
    } catch (const SyntaxError& e) {
      throw SyntaxError(begin + e.position, e.expected);
    }
    begin = end + 1;
  }
  return words;
}

struct ParsedEnsemble {
  EnsembleKind kind = EnsembleKind::GinibreComplex;
  double p = 1.0;
  int b = 1;
};

ParsedEnsemble parse_ensemble_string(const std::string& text) {
  ParsedEnsemble out;
  if (text.empty() || text == "complex") return out;
  if (text == "real") {
    out.kind = EnsembleKind::GinibreReal;
    return out;
  }
  if (text == "gue") {
    out.kind = EnsembleKind::GUE;
    return out;
  }
  if (text == "goe") {
    out.kind = EnsembleKind::GOE;
    return out;
  }
  if (text.rfind("sparse:p=", 0) == 0) {
    out.kind = EnsembleKind::SparseComplex;
    std::size_t used = 0;
    const std::string value = text.substr(9);
    out.p = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("bad sparse spec: " + text);
    return out;
  }
  if (text.rfind("band:b=", 0) == 0) {
    out.kind = EnsembleKind::BandComplex;
    std::size_t used = 0;
    const std::string value = text.substr(7);
    out.b = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument("bad band spec: " + text);
    return out;
  }
  throw std::invalid_argument(
      "unknown ensemble '" + text +
      "' (expected complex, real, gue, goe, sparse:p=<x>, band:b=<n>)");
}

Json estimate_json(const MomentEstimate& e) {
  Json j;
  j["mean_re"] = e.mean.real();
  j["mean_im"] = e.mean.imag();
  j["std_error"] = e.std_error;
  j["samples"] = e.samples;
  return j;
}

Json check_json(const std::string& name, double estimate, double target,
                double tolerance, bool pass) {
  Json j;
  j["name"] = name;
  j["estimate"] = estimate;
  j["target"] = target;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

int finish_report(Json& report, const Clock::time_point& start,
                  std::ostream& out, int code) {
  const double ms = std::chrono::duration<double, std::milli>(
                        Clock::now() - start)
                        .count();
  report["timings"]["wall_ms"] = ms;
  out << report.dump(2) << "\n";
  return code;
}

bool all_pass(const Json& checks) {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return true;
}

struct AnalyzeArgs {
  std::vector<std::string> word;
};

struct ExpandArgs {
  std::vector<std::string> words;
  bool centered = false;
  int oracle_n = 0;
  int max_length = EnumerationLimits{}.max_total_length;
  int max_oracle_n = OracleLimits{}.max_N;
  int max_oracle_length = OracleLimits{}.max_total_length;
  int workers = default_workers();
  bool dump_pairings = false;
};

struct LimitsArgs {
  std::vector<std::string> word;
  int fc = 0;
  std::string mixed;
  int kmax = 3;
  int max_length = EnumerationLimits{}.max_total_length;
};

struct BandArgs {
  std::vector<std::string> word;
  int n = 0;
  int b = 0;
  bool alpha = false;
  int cycle = 0;
  bool clt = false;
  double lambda = 0.0;
  int max_length = EnumerationLimits{}.max_total_length;
  int max_vertices = BandLimits{}.max_component_vertices;
  long long max_offsets = BandLimits{}.max_component_offsets;
};

struct SimulateArgs {
  std::vector<std::string> word;
  std::string ensemble = "complex";
  std::string dist = "gaussian";
  int n = 64;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  int workers = default_workers();
  bool check = false;
  int check_fc = 0;
  std::string csv;
  int max_length = EnumerationLimits{}.max_total_length;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  const std::vector<Word> words = parse_word_list(args.word);
  if (words.size() != 1) throw std::invalid_argument("analyze takes one word");
  const Word& w = words.front();
  Json report = make_report("analyze");
  report["inputs"]["word"] = render(w);
  const SphericalCounts counts = spherical_counts(w);
  const CltParams params = clt_params(w);
  Json results;
  results["length"] = w.size();
  results["coperiod"] = coperiod(w);
  results["balanced"] = is_balanced(w);
  results["star_free"] = is_star_free(w);
  results["star_stable"] = is_star_stable(w);
  results["counts"] = {{"a", decimal_string(counts.a)},
                       {"p", decimal_string(counts.p)},
                       {"b", decimal_string(counts.b)},
                       {"c", decimal_string(counts.c)}};
  Json clt;
  clt["shift"] = decimal_string(params.shift);
  clt["b"] = decimal_string(params.b);
  clt["c"] = decimal_string(params.c);
  clt["var_re"] = rational_json(params.var_re());
  clt["var_im"] = rational_json(params.var_im());
  results["clt"] = clt;
  report["results"] = results;
  return finish_report(report, start, out, 0);
}

int run_expand(const ExpandArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  const std::vector<Word> words = parse_word_list(args.words);
  const EnumerationLimits limits{args.max_length};
  Json report = make_report("expand");
  Json input_words = Json::array();
  for (const Word& w : words) input_words.push_back(render(w));
  report["inputs"]["words"] = input_words;
  report["inputs"]["centered"] = args.centered;
  const LaurentPolynomial poly =
      args.centered ? atom_free_expansion(words, limits, args.workers)
                    : genus_expansion(words, limits, args.workers);
  report["results"]["polynomial"] = polynomial_json(poly);
  if (args.dump_pairings) {
    Json dumped = Json::array();
    for (const DecoratedPairing& phi : enumerate_pairings(words, limits))
      dumped.push_back(pairing_json(phi));
    report["results"]["pairings"] = dumped;
  }
  int code = 0;
  if (args.oracle_n > 0) {
    const OracleLimits oracle_limits{args.max_oracle_n, args.max_oracle_length};
    const BigRational oracle =
        brute_force_wick_oracle(words, args.oracle_n, oracle_limits);
    // The oracle computes the raw expectation, so compare against the
    // uncentered expansion even when --centered selected the atom-free one.
    const LaurentPolynomial raw =
        args.centered ? genus_expansion(words, limits, args.workers) : poly;
    const BigRational exact = raw.evaluate(args.oracle_n);
    const bool pass = oracle == exact;
    Json check;
    check["name"] = "oracle";
    check["N"] = args.oracle_n;
    check["exact"] = rational_string(exact);
    check["oracle"] = rational_string(oracle);
    check["pass"] = pass;
    report["checks"] = Json::array({check});
    if (!pass) code = 1;
  }
  return finish_report(report, start, out, code);
}

int run_limits(const LimitsArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  const std::vector<Word> words = parse_word_list(args.word);
  if (words.size() != 1) throw std::invalid_argument("limits takes one word");
  const Word& w = words.front();
  const EnumerationLimits limits{args.max_length};
  Json report = make_report("limits");
  report["inputs"]["word"] = render(w);
  Json results;
  if (args.fc > 0) {
    Json fc = Json::array();
    for (int k = 1; k <= args.fc; ++k) {
      Json row;
      row["k"] = k;
      row["value"] = decimal_string(fc_moment_of_word(w, k, limits));
      fc.push_back(row);
    }
    results["fc_moments"] = fc;
  }
  if (!args.mixed.empty()) {
    MixedIndex idx;
    std::stringstream stream(args.mixed);
    std::string part;
    while (std::getline(stream, part, ','))
      idx.parts.push_back(std::stoi(part));
    if (idx.parts.empty() || idx.parts.size() % 2 != 0)
      throw std::invalid_argument(
          "--mixed wants an even comma-separated exponent list a1,b1,...");
    results["mixed_moment"] =
        decimal_string(word_mixed_moment_limit(w, idx, limits));
  }
  if (args.fc == 0 && args.mixed.empty()) {
    Json joint = Json::array();
    const std::vector<BigInt> vars =
        joint_trace_covariance(w, args.kmax, limits);
    for (int j = 1; j <= args.kmax; ++j) {
      Json row;
      row["power"] = j;
      row["variance"] = decimal_string(vars[static_cast<std::size_t>(j - 1)]);
      joint.push_back(row);
    }
    results["joint_variances"] = joint;
  }
  report["results"] = results;
  return finish_report(report, start, out, 0);
}

int run_band(const BandArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  const EnumerationLimits enum_limits{args.max_length};
  const BandLimits band_limits{args.max_vertices, args.max_offsets};
  Json report = make_report("band");
  if (args.cycle > 0) {
    if (!args.alpha)
      throw std::invalid_argument("--cycle needs --alpha");
    report["inputs"]["cycle"] = args.cycle;
    report["inputs"]["lambda"] = args.lambda;
    Json results;
    results["quadrature"] = alpha_cycle(args.cycle);
    ConstraintGraph cycle_graph;
    cycle_graph.vertices = args.cycle;
    for (int v = 0; v + 1 < args.cycle; ++v)
      cycle_graph.edges.push_back({v, v + 1});
    if (args.cycle >= 3) cycle_graph.edges.push_back({0, args.cycle - 1});
    const AlphaEstimate ladder =
        alpha(cycle_graph, args.lambda, band_limits);
    results["ladder"] = {{"value", ladder.value}, {"error", ladder.error}};
    report["results"] = results;
    return finish_report(report, start, out, 0);
  }
  const std::vector<Word> words = parse_word_list(args.word);
  if (args.clt) {
    if (words.size() != 1)
      throw std::invalid_argument("--clt takes one word");
    const Word& w = words.front();
    report["inputs"]["word"] = render(w);
    report["inputs"]["lambda"] = args.lambda;
    const BandCltParams params =
        band_clt_params(w, args.lambda, enum_limits, band_limits);
    Json results;
    results["a"] = decimal_string(params.a);
    results["b_prime"] = params.b_prime;
    results["b_error"] = params.b_error;
    results["c_prime"] = params.c_prime;
    results["c_error"] = params.c_error;
    results["cycle_verified"] = params.gamma_cycle_verified;
    if (!params.counterexample.empty())
      results["counterexample"] = params.counterexample;
    report["results"] = results;
    return finish_report(report, start, out, 0);
  }
  if (args.n < 1 || args.b < 1)
    throw std::invalid_argument("band expansion needs --N and --b");
  const BandConfig cfg{args.n, args.b};
  Json input_words = Json::array();
  for (const Word& w : words) input_words.push_back(render(w));
  report["inputs"]["words"] = input_words;
  report["inputs"]["N"] = cfg.N;
  report["inputs"]["b"] = cfg.b;
  report["inputs"]["l"] = cfg.l();
  report["results"]["value"] =
      rational_json(band_genus_expansion(words, cfg, enum_limits, band_limits));
  return finish_report(report, start, out, 0);
}

bool all_complex_ginibre(const Word& w) {
  for (const Letter& l : w.letters)
    if (l.ensemble != Ensemble::GinibreComplex) return false;
  return true;
}

int run_simulate(const SimulateArgs& args, std::ostream& out) {
  const auto start = Clock::now();
  std::vector<Word> words = parse_word_list(args.word);
  const EnumerationLimits enum_limits{args.max_length};
  const ParsedEnsemble parsed = parse_ensemble_string(args.ensemble);
  EnsembleSpec spec;
  spec.kind = parsed.kind;
  spec.N = args.n;
  spec.p = parsed.p;
  spec.b = parsed.b;
  // real/gue/goe reinterpret the complex-Ginibre letters of the word, on
  // both the sampling and the exact side.
  if (parsed.kind == EnsembleKind::GinibreReal ||
      parsed.kind == EnsembleKind::GUE || parsed.kind == EnsembleKind::GOE) {
    const Ensemble target = parsed.kind == EnsembleKind::GinibreReal
                                ? Ensemble::GinibreReal
                                : parsed.kind == EnsembleKind::GUE
                                      ? Ensemble::GUE
                                      : Ensemble::GOE;
    for (Word& w : words)
      for (Letter& l : w.letters)
        if (l.ensemble == Ensemble::GinibreComplex) {
          l.ensemble = target;
          l = normalized(l);
        }
    spec.kind = EnsembleKind::GinibreComplex;
  }
  if (args.dist == "fourth")
    spec.dist = EntryDist::FourthMatched;
  else if (args.dist != "gaussian")
    throw std::invalid_argument("--dist wants gaussian or fourth");
  MCConfig cfg{args.samples, args.seed, args.workers};

  Json report = make_report("simulate");
  Json input_words = Json::array();
  for (const Word& w : words) input_words.push_back(render(w));
  report["inputs"]["words"] = input_words;
  report["inputs"]["ensemble"] = args.ensemble;
  report["inputs"]["dist"] = args.dist;
  report["inputs"]["N"] = args.n;
  report["inputs"]["samples"] = args.samples;
  report["inputs"]["seed"] = args.seed;
  report["inputs"]["workers"] = args.workers;

  std::unique_ptr<std::ofstream> csv;
  SampleSink sink;
  if (!args.csv.empty()) {
    csv = std::make_unique<std::ofstream>(args.csv);
    if (!*csv) throw std::invalid_argument("cannot open csv file " + args.csv);
    *csv << std::setprecision(17) << "sample,re,im\n";
    std::ofstream* stream = csv.get();
    sink = [stream](std::uint64_t s, std::complex<double> v) {
      *stream << s << "," << v.real() << "," << v.imag() << "\n";
    };
    report["inputs"]["csv"] = args.csv;
  }

  Json results;
  Json checks = Json::array();

  // Mean comparisons need the exact expansion to be the truth at this
  // finite N: that holds for the Gaussian ensembles and the Gaussian band,
  // but not for sparse or fourth-matched entries (non-Gaussian beyond the
  // matched moments).
  const bool gaussian = spec.dist == EntryDist::ComplexGaussian;
  const bool mean_check_possible =
      gaussian && (spec.kind == EnsembleKind::GinibreComplex ||
                   spec.kind == EnsembleKind::BandComplex);
  const bool want_fc = args.check_fc > 0;

  if (!want_fc || args.check) {
    const MomentEstimate estimate =
        trace_moment_estimate(words, spec, cfg, want_fc ? SampleSink{} : sink);
    results["estimate"] = estimate_json(estimate);
    if (args.check && mean_check_possible) {
      double target = 0.0;
      if (spec.kind == EnsembleKind::BandComplex) {
        const BandConfig band_cfg{spec.N, spec.b};
        target = band_genus_expansion(words, band_cfg, enum_limits)
                     .convert_to<double>();
      } else {
        target = genus_expansion(words, enum_limits, args.workers)
                     .evaluate(spec.N)
                     .convert_to<double>();
      }
      const double tolerance =
          5.0 * estimate.std_error + 1e-9 * (1.0 + std::abs(target));
      const double distance = std::abs(estimate.mean -
                                       std::complex<double>(target, 0.0));
      checks.push_back(
          check_json("mean", estimate.mean.real(), target, tolerance,
                     distance <= tolerance));
    }
  }

  if (args.check && words.size() == 1) {
    const Word& w = words.front();
    if (spec.kind == EnsembleKind::BandComplex && is_star_free(w)) {
      // Scaled variance (l/N) E|Tr|^2 against the band CLT coefficient.
      const JointTraceEstimates joint = joint_trace_samples(w, 1, spec, cfg);
      const MomentEstimate& est = joint.abs_squared.front();
      const int l = BandConfig{spec.N, spec.b}.l();
      const double scale = static_cast<double>(l) / spec.N;
      const BandCltParams band_params =
          band_clt_params(w, static_cast<double>(spec.b) / spec.N, enum_limits);
      const double tolerance =
          5.0 * scale * est.std_error + band_params.b_error;
      const double scaled = scale * est.mean.real();
      results["scaled_variance"] = {{"value", scaled},
                                    {"std_error", scale * est.std_error},
                                    {"l", l}};
      checks.push_back(check_json("band_variance", scaled, band_params.b_prime,
                                  tolerance,
                                  std::abs(scaled - band_params.b_prime) <=
                                      tolerance));
    } else if (spec.kind == EnsembleKind::GinibreComplex &&
               all_complex_ginibre(w) && is_balanced(w)) {
      const CovarianceEstimate cov =
          centered_trace_covariance(w, spec, cfg);
      const CltParams params = clt_params(w, enum_limits);
      const double var_re = params.var_re().convert_to<double>();
      const double var_im = params.var_im().convert_to<double>();
      results["covariance"] = {
          {"cov", {{cov.cov[0][0], cov.cov[0][1]},
                   {cov.cov[1][0], cov.cov[1][1]}}},
          {"se", {{cov.se[0][0], cov.se[0][1]},
                  {cov.se[1][0], cov.se[1][1]}}}};
      const double targets[2][2] = {{var_re, 0.0}, {0.0, var_im}};
      const char* names[2][2] = {{"cov_re_re", "cov_re_im"},
                                 {"cov_im_re", "cov_im_im"}};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          const double tolerance = 5.0 * cov.se[r][c];
          checks.push_back(check_json(
              names[r][c], cov.cov[r][c], targets[r][c], tolerance,
              std::abs(cov.cov[r][c] - targets[r][c]) <= tolerance));
        }
    }
  }

  if (want_fc) {
    if (words.size() != 1)
      throw std::invalid_argument("--check-fc takes one word");
    const Word& w = words.front();
    const std::vector<MomentEstimate> moments =
        squared_singular_moments(w, args.check_fc, spec, cfg, sink);
    const double factor =
        spec.kind == EnsembleKind::SparseComplex ? 8.0 : 5.0;
    Json fc = Json::array();
    for (int k = 1; k <= args.check_fc; ++k) {
      const MomentEstimate& est = moments[static_cast<std::size_t>(k - 1)];
      const double target =
          fuss_catalan(static_cast<int>(w.size()) + 1, k).convert_to<double>();
      Json row = estimate_json(est);
      row["k"] = k;
      row["target"] = target;
      fc.push_back(row);
      const double tolerance = factor * est.std_error;
      checks.push_back(check_json("fc_" + std::to_string(k), est.mean.real(),
                                  target, tolerance,
                                  std::abs(est.mean -
                                           std::complex<double>(target, 0.0)) <=
                                      tolerance));
    }
    results["fc_moments"] = fc;
  }

  report["results"] = results;
  if (!checks.empty()) report["checks"] = checks;
  const int code = all_pass(checks) ? 0 : 1;
  return finish_report(report, start, out, code);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo trace moments of Gaussian matrix words"};
  app.name("tracewick");
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Word combinatorics and CLT parameters");
  analyze->add_option("word", analyze_args.word, "word, e.g. \"G1 G1*\"")
      ->required();

  ExpandArgs expand_args;
  CLI::App* expand = app.add_subcommand(
      "expand", "Exact genus expansion of E[prod Tr]");
  expand->add_option("words", expand_args.words,
                     "comma-separated word list")->required();
  expand->add_flag("--centered", expand_args.centered,
                   "atom-free expansion of the centered traces");
  expand->add_option("--oracle", expand_args.oracle_n,
                     "cross-check against the summation oracle at this N");
  expand->add_flag("--pairings", expand_args.dump_pairings,
                   "include every decorated pairing in the report");
  expand->add_option("--max-length", expand_args.max_length,
                     "total word length cap");
  expand->add_option("--max-oracle-n", expand_args.max_oracle_n,
                     "oracle dimension cap");
  expand->add_option("--max-oracle-length", expand_args.max_oracle_length,
                     "oracle word length cap");
  expand->add_option("--workers", expand_args.workers,
                     "enumeration worker threads");

  LimitsArgs limits_args;
  CLI::App* limits = app.add_subcommand(
      "limits", "Limit laws: Fuss-Catalan, mixed moments, joint variances");
  limits->add_option("word", limits_args.word, "word")->required();
  limits->add_option("--fc", limits_args.fc,
                     "Fuss-Catalan moments for k = 1..this");
  limits->add_option("--mixed", limits_args.mixed,
                     "mixed-moment exponents a1,b1,...");
  limits->add_option("--kmax", limits_args.kmax,
                     "joint variance powers (default mode)");
  limits->add_option("--max-length", limits_args.max_length,
                     "total word length cap");

  BandArgs band_args;
  CLI::App* band = app.add_subcommand(
      "band", "Band-matrix expansions and alpha coefficients");
  band->add_option("word", band_args.word, "word list");
  band->add_option("--N", band_args.n, "matrix dimension");
  band->add_option("--b", band_args.b, "band half-width");
  band->add_flag("--alpha", band_args.alpha, "alpha coefficient mode");
  band->add_option("--cycle", band_args.cycle,
                   "cycle length m for --alpha");
  band->add_flag("--clt", band_args.clt, "band CLT parameters");
  band->add_option("--lambda", band_args.lambda,
                   "band scaling b ~ lambda N (0 = intermediate scale)");
  band->add_option("--max-length", band_args.max_length,
                   "total word length cap");
  band->add_option("--max-vertices", band_args.max_vertices,
                   "per-component vertex cap");
  band->add_option("--max-offsets", band_args.max_offsets,
                   "per-component offset enumeration cap");

  SimulateArgs simulate_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo trace statistics");
  simulate->add_option("word", simulate_args.word, "word list")->required();
  simulate->add_option("--ensemble", simulate_args.ensemble,
                       "complex|real|gue|goe|sparse:p=<x>|band:b=<n>");
  simulate->add_option("--dist", simulate_args.dist,
                       "entry distribution: gaussian|fourth");
  simulate->add_option("--N", simulate_args.n, "matrix dimension");
  simulate->add_option("--samples", simulate_args.samples, "sample count");
  simulate->add_option("--seed", simulate_args.seed, "RNG seed");
  simulate->add_option("--workers", simulate_args.workers, "worker threads");
  simulate->add_flag("--check", simulate_args.check,
                     "compare against exact values");
  simulate->add_option("--check-fc", simulate_args.check_fc,
                       "check squared-singular moments up to this k");
  simulate->add_option("--csv", simulate_args.csv,
                       "stream per-sample values to this file");
  simulate->add_option("--max-length", simulate_args.max_length,
                       "total word length cap for exact targets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_args, out);
    if (expand->parsed()) return run_expand(expand_args, out);
    if (limits->parsed()) return run_limits(limits_args, out);
    if (band->parsed()) return run_band(band_args, out);
    if (simulate->parsed()) return run_simulate(simulate_args, out);
    err << "no subcommand\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "parse error at position " << e.position << ": expected "
        << e.expected << "\n";
    return 2;
  } catch (const TooLargeError& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tracewick
