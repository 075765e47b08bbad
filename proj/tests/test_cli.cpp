#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tracewick/cli.hpp"
#include "tracewick/json_io.hpp"

using namespace tracewick;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
  Json report;  // parsed from out when it is valid JSON

  bool has_report() const { return !report.is_null(); }
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<std::string> full = {"tracewick"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult result;
  result.code =
      run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  result.report = Json::value_t::null;
  if (!result.out.empty() && result.out[0] == '{') {
    result.report = Json::parse(result.out, nullptr, false);
    if (result.report.is_discarded()) result.report = Json::value_t::null;
  }
  return result;
}

}  // namespace

TEST_CASE("analyze reports the CLT parameters") {
  CliResult r = run({"analyze", "G1 G1* G2 G2* G3 G3*"});
  REQUIRE(r.code == 0);
  REQUIRE(r.has_report());
  CHECK(r.report["schema_version"] == 1);
  CHECK(r.report["command"] == "analyze");
  const Json& results = r.report["results"];
  CHECK(results["length"] == 6);
  CHECK(results["coperiod"] == 1);
  CHECK(results["balanced"] == true);
  CHECK(results["star_free"] == false);
  CHECK(results["star_stable"] == false);
  CHECK(results["counts"]["a"] == "1");
  CHECK(results["counts"]["p"] == "0");
  CHECK(results["counts"]["b"] == "7");
  CHECK(results["counts"]["c"] == "6");
  CHECK(results["clt"]["shift"] == "1");
  CHECK(results["clt"]["var_re"]["exact"] == "13/2");
  CHECK(results["clt"]["var_im"]["exact"] == "1/2");
  CHECK(r.report.contains("timings"));
}

TEST_CASE("analyze of a star-free word") {
  CliResult r = run({"analyze", "G1 G2"});
  REQUIRE(r.code == 0);
  CHECK(r.report["results"]["coperiod"] == 1);
  CHECK(r.report["results"]["star_free"] == true);
  CHECK(r.report["results"]["counts"]["b"] == "1");
  CHECK(r.report["results"]["clt"]["shift"] == "0");
}

TEST_CASE("expand emits exact polynomials") {
  CliResult r = run({"expand", "G1 G2 G1* G2~"});
  REQUIRE(r.code == 0);
  CHECK(r.report["results"]["polynomial"]["pretty"] == "N^-1");
  CHECK(r.report["results"]["polynomial"]["coefficients"]["-1"] == "1");

  CliResult two = run({"expand", "G1 G1* G1 G1*"});
  CHECK(two.report["results"]["polynomial"]["pretty"] == "2N");

  CliResult zero = run({"expand", "G1"});
  CHECK(zero.code == 0);
  CHECK(zero.report["results"]["polynomial"]["pretty"] == "0");
}

TEST_CASE("expand cross-checks the oracle") {
  CliResult r = run({"expand", "G1 G1*,G1 G1*", "--oracle", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.report.contains("checks"));
  const Json& check = r.report["checks"][0];
  CHECK(check["name"] == "oracle");
  CHECK(check["N"] == 3);
  CHECK(check["exact"] == "10");
  CHECK(check["oracle"] == "10");
  CHECK(check["pass"] == true);

  // The centered expansion still validates the raw polynomial.
  CliResult centered =
      run({"expand", "G1 G1*,G1 G1*", "--centered", "--oracle", "3"});
  REQUIRE(centered.code == 0);
  CHECK(centered.report["results"]["polynomial"]["pretty"] == "1");
  CHECK(centered.report["checks"][0]["pass"] == true);
}

TEST_CASE("expand can dump decorated pairings") {
  CliResult r = run({"expand", "G1 G1* G1 G1*", "--pairings"});
  REQUIRE(r.code == 0);
  const Json& pairings = r.report["results"]["pairings"];
  REQUIRE(pairings.size() == 2);
  CHECK(pairings[0].contains("pairs"));
  CHECK(pairings[0].contains("twists"));
  CHECK(pairings[0]["pairs"].size() == 2);
}

TEST_CASE("limits subcommand") {
  CliResult fc = run({"limits", "G1 G2", "--fc", "3"});
  REQUIRE(fc.code == 0);
  const Json& rows = fc.report["results"]["fc_moments"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["value"] == "1");
  CHECK(rows[1]["value"] == "3");
  CHECK(rows[2]["value"] == "12");

  CliResult mixed = run({"limits", "G1", "--mixed", "1,1,1,1"});
  REQUIRE(mixed.code == 0);
  CHECK(mixed.report["results"]["mixed_moment"] == "2");

  CliResult joint = run({"limits", "G1 G1", "--kmax", "3"});
  REQUIRE(joint.code == 0);
  const Json& vars = joint.report["results"]["joint_variances"];
  REQUIRE(vars.size() == 3);
  CHECK(vars[0]["variance"] == "2");
  CHECK(vars[1]["variance"] == "4");
  CHECK(vars[2]["variance"] == "6");
}

TEST_CASE("band subcommand") {
  CliResult exact = run({"band", "G1 G1*", "--N", "10", "--b", "2"});
  REQUIRE(exact.code == 0);
  CHECK(exact.report["results"]["value"]["exact"] == "10");
  CHECK(exact.report["inputs"]["l"] == 5);

  CliResult split = run({"band", "G1,G1*", "--N", "8", "--b", "2"});
  REQUIRE(split.code == 0);
  CHECK(split.report["results"]["value"]["exact"] == "8/5");

  CliResult alpha = run({"band", "--alpha", "--cycle", "3"});
  REQUIRE(alpha.code == 0);
  CHECK(alpha.report["results"]["quadrature"].get<double>() ==
        doctest::Approx(0.75).epsilon(1e-4));
  CHECK(alpha.report["results"]["ladder"]["value"].get<double>() ==
        doctest::Approx(0.75).epsilon(1e-2));

  CliResult clt = run({"band", "G1 G2", "--clt", "--lambda", "0.5"});
  REQUIRE(clt.code == 0);
  CHECK(clt.report["results"]["b_prime"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(clt.report["results"]["cycle_verified"] == true);
}

TEST_CASE("simulate with exact checks passes on Gaussian ensembles") {
  CliResult r = run({"simulate", "G1 G1*", "--N", "16", "--samples", "400",
                     "--seed", "3", "--check"});
  REQUIRE(r.code == 0);
  REQUIRE(r.has_report());
  CHECK(r.report["results"]["estimate"]["samples"] == 400);
  REQUIRE(r.report.contains("checks"));
  bool saw_mean = false;
  for (const Json& check : r.report["checks"]) {
    CHECK(check["pass"] == true);
    if (check["name"] == "mean") saw_mean = true;
  }
  CHECK(saw_mean);
}

TEST_CASE("simulate rewrites Ginibre letters for ensemble overrides") {
  CliResult r = run({"simulate", "G1 G1", "--ensemble", "goe", "--N", "12",
                     "--samples", "300", "--seed", "2", "--check"});
  REQUIRE(r.code == 0);
  // Exact target for S S at N=12 is N + 1 = 13.
  bool saw_mean = false;
  for (const Json& check : r.report["checks"]) {
    if (check["name"] == "mean") {
      saw_mean = true;
      CHECK(check["target"].get<double>() == doctest::Approx(13.0));
      CHECK(check["pass"] == true);
    }
  }
  CHECK(saw_mean);
}

TEST_CASE("simulate sparse FC check reports the model drift honestly") {
  // First moments are exact for the sparse model, so fc_1 passes; fc_2 sits
  // on the documented O(1/(N p)) drift and fails its 8-stderr gate.
  CliResult r = run({"simulate", "G1 G2", "--ensemble", "sparse:p=0.1",
                     "--check-fc", "2", "--N", "64", "--samples", "300",
                     "--seed", "4"});
  REQUIRE(r.has_report());
  bool fc1_pass = false;
  bool saw_fc2 = false;
  for (const Json& check : r.report["checks"]) {
    if (check["name"] == "fc_1") fc1_pass = check["pass"].get<bool>();
    if (check["name"] == "fc_2") {
      saw_fc2 = true;
      CHECK(check["target"].get<double>() == doctest::Approx(3.0));
    }
  }
  CHECK(fc1_pass);
  CHECK(saw_fc2);
  // Exit code mirrors the aggregated verdict.
  bool all_pass = true;
  for (const Json& check : r.report["checks"])
    all_pass = all_pass && check["pass"].get<bool>();
  CHECK(r.code == (all_pass ? 0 : 1));
}

TEST_CASE("simulate dense FC check passes") {
  CliResult r = run({"simulate", "G1 G2", "--check-fc", "2", "--N", "64",
                     "--samples", "400", "--seed", "6"});
  REQUIRE(r.code == 0);
  for (const Json& check : r.report["checks"]) CHECK(check["pass"] == true);
}

TEST_CASE("simulate band scaled variance check") {
  CliResult r = run({"simulate", "G1 G2", "--ensemble", "band:b=4", "--N",
                     "32", "--samples", "300", "--seed", "5", "--check"});
  REQUIRE(r.code == 0);
  CHECK(r.report["results"].contains("scaled_variance"));
  bool saw_band = false;
  for (const Json& check : r.report["checks"]) {
    if (check["name"] == "band_variance") {
      saw_band = true;
      CHECK(check["pass"] == true);
    }
  }
  CHECK(saw_band);
}

TEST_CASE("simulate streams deterministic per-sample CSV") {
  const char* path = "tracewick_test_stream.csv";
  CliResult first = run({"simulate", "G1 G1*", "--N", "8", "--samples", "50",
                         "--seed", "11", "--csv", path});
  REQUIRE(first.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "sample,re,im");
  int rows = 0;
  std::string line;
  std::string row0;
  while (std::getline(in, line)) {
    if (rows == 0) row0 = line;
    ++rows;
  }
  in.close();
  CHECK(rows == 50);
  CHECK(row0.rfind("0,", 0) == 0);

  // Re-running with more workers yields the identical stream.
  CliResult second = run({"simulate", "G1 G1*", "--N", "8", "--samples", "50",
                          "--seed", "11", "--workers", "2", "--csv", path});
  REQUIRE(second.code == 0);
  std::ifstream again(path);
  std::ostringstream content_again;
  content_again << again.rdbuf();
  // Compare against a fresh serial rerun.
  CliResult third = run({"simulate", "G1 G1*", "--N", "8", "--samples", "50",
                         "--seed", "11", "--csv", path});
  REQUIRE(third.code == 0);
  std::ifstream serial(path);
  std::ostringstream content_serial;
  content_serial << serial.rdbuf();
  CHECK(content_again.str() == content_serial.str());
  std::remove(path);
}

TEST_CASE("simulate results are deterministic for a fixed seed") {
  std::vector<std::string> args = {"simulate", "H1 H1", "--ensemble", "gue",
                                   "--N",      "12",    "--samples", "200",
                                   "--seed",   "9"};
  CliResult a = run(args);
  CliResult b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.report["results"] == b.report["results"]);
}

TEST_CASE("worker default comes from the environment") {
  ::setenv("TRACEWICK_WORKERS", "2", 1);
  CliResult r = run({"simulate", "G1 G1*", "--N", "8", "--samples", "20",
                     "--seed", "1"});
  ::unsetenv("TRACEWICK_WORKERS");
  REQUIRE(r.code == 0);
  CHECK(r.report["inputs"]["workers"] == 2);

  CliResult fallback = run({"simulate", "G1 G1*", "--N", "8", "--samples",
                            "20", "--seed", "1"});
  CHECK(fallback.report["inputs"]["workers"] == 1);
}

TEST_CASE("exit codes") {
  // 0: help.
  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("tracewick") != std::string::npos);

  // 2: usage and parse errors.
  CHECK(run({}).code == 2);
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"expand", "G1 G1*", "--bogus"}).code == 2);
  CliResult parse = run({"analyze", "G1 ?"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("position 3") != std::string::npos);
  CHECK(run({"limits", "G1", "--mixed", "1,2,3"}).code == 2);

  // 3: resource caps.
  CliResult cap = run({"expand", "G1 G1*,G1 G1*", "--oracle", "8"});
  CHECK(cap.code == 3);
  CHECK(run({"expand", "(G1 G1*)^13"}).code == 3);
  CHECK(run({"band", "(G1 G1*)^13", "--N", "8", "--b", "2"}).code == 3);
}
