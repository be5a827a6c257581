#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "periodscape/cli.hpp"

using namespace periodscape;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "periodscape");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json parse(const Run& r) { return json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("periodscape_test_" + name);
}

}  // namespace

TEST(Cli, LandscapeJsonRoundTrip) {
  const auto r = run({"landscape", "phi:5", "10", "--no-cycles"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = parse(r);
  EXPECT_EQ(doc["command"], "landscape");
  EXPECT_TRUE(doc.contains("config"));
  const auto& res = doc["results"][0];
  EXPECT_EQ(res["total"], 2004);
  EXPECT_FALSE(res.contains("cycles"));
  const auto expect = enumerate_landscape(recurrence_from(cyclotomic(5)), 10, false).spectrum;
  EXPECT_EQ(spectrum_from_json(res["spectrum"]), expect);
  EXPECT_EQ(res["spectrum"][0]["length"], 1);
}

TEST(Cli, LandscapeDigits) {
  const auto doc = parse(run({"landscape", "fib", "4", "--digits"}));
  std::vector<std::string> digits;
  for (const auto& c : doc["results"][0]["cycles"]) digits.push_back(c["digits"]);
  EXPECT_EQ(digits, (std::vector<std::string>{"0", "022", "011231", "033213"}));
  EXPECT_EQ(doc["results"][0]["cycles"][2]["residues"], json({0, 1, 1, 2, 3, 1}));
}

TEST(Cli, PolySpecs) {
  EXPECT_EQ(cli::parse_poly("fib").coeffs(), fibonacci_recurrence().coeffs());
  EXPECT_EQ(cli::parse_poly("1,1,-1").coeffs(), parity_recurrence().coeffs());
  EXPECT_EQ(cli::parse_poly("rec:0,0,1").coeffs(), (std::vector<std::int64_t>{0, 0, 1}));
  EXPECT_EQ(cli::parse_poly("pow:3").coeffs(), (std::vector<std::int64_t>{0, 0, 1}));
  EXPECT_THROW(cli::parse_poly("bogus"), std::invalid_argument);
  EXPECT_THROW(cli::parse_poly("2,1,1"), std::invalid_argument);
}

TEST(Cli, Ranges) {
  EXPECT_EQ(cli::parse_range("-2..1"), (std::vector<std::int64_t>{-2, -1, 0, 1}));
  EXPECT_EQ(cli::parse_range("3,5,7"), (std::vector<std::int64_t>{3, 5, 7}));
  EXPECT_THROW(cli::parse_range("5..2"), std::invalid_argument);
  EXPECT_THROW(cli::parse_range("a..b"), std::invalid_argument);
}

TEST(Cli, PredictMatchesLibrary) {
  const auto doc = parse(run({"predict", "phi_2p", "--p", "5", "--m", "10"}));
  EXPECT_EQ(doc["results"][0]["total"], 1004);
  EXPECT_EQ(doc["results"][0]["status"], "predicted");
}

TEST(Cli, CoprimeGapIsUncoveredNotAnError) {
  const auto r = run({"predict", "phi_2p", "--p", "5", "--m", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["results"][0]["status"], "uncovered_case");
  const auto v = run({"verify", "phi_2p", "--p", "3", "--m", "5"});
  EXPECT_EQ(v.code, 0);
  const auto rec = parse(v)["results"][0];
  EXPECT_EQ(rec["status"], "uncovered");
  EXPECT_EQ(spectrum_from_json(rec["observed"]), (Spectrum{{1, 1}, {6, 4}}));
}

TEST(Cli, CapExhaustion) {
  const auto r = run({"--state-cap", "1000", "landscape", "phi:7", "5"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(parse(r)["results"][0]["status"], "cap_exceeded");
  const auto v = run({"verify", "phi_pj", "--p", "3", "--j", "3", "--m", "2,3"});
  EXPECT_EQ(v.code, 3);
  const auto doc = parse(v);
  EXPECT_EQ(doc["results"][0]["status"], "match");
  EXPECT_EQ(doc["results"][1]["status"], "skipped_cap");
}

TEST(Cli, IntegralityViolationIsStructured) {
  std::ostringstream err;
  const auto o = cli::guarded([]() -> cli::Outcome { exact_quotient(10, 4, "(m^2 - 2) / 4"); return {}; }, err);
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.results[0]["status"], "integrality_violation");
  EXPECT_EQ(o.results[0]["formula"], "(m^2 - 2) / 4");
  EXPECT_EQ(o.results[0]["numerator"], 10);
  EXPECT_EQ(o.results[0]["denominator"], 4);
}

TEST(Cli, MismatchRecordIsFirstClass) {
  auto pred = predict_phi_p(3, 4);
  pred.by_length[3] += 1;
  const auto land = enumerate_landscape(recurrence_from(cyclotomic(3)), 4, false);
  const auto rec = cli::from_report(verify_prediction(pred, land, "Phi_3 mod 4"));
  EXPECT_EQ(rec.status, cli::Status::mismatch);
  EXPECT_EQ(rec.record["instance"], "Phi_3 mod 4");
  EXPECT_EQ(rec.record["diff"][0]["length"], 3);
  const std::vector<cli::Instance> inst{{"x", [] { return cli::InstanceResult{}; }}};
  std::vector<cli::InstanceResult> res{rec};
  EXPECT_EQ(cli::sweep_outcome(inst, res).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"landscape", "fib"}).code, 2);
  EXPECT_EQ(run({"landscape", "rec:1,2", "4"}).code, 2);
  EXPECT_EQ(run({"--format", "yaml", "pisano", "3"}).code, 2);
  EXPECT_EQ(run({"weights", "--m", "6", "--d", "4"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifySweeps) {
  EXPECT_EQ(run({"verify", "phi_p", "--p", "2,3,5", "--m", "1..8"}).code, 0);
  EXPECT_EQ(run({"verify", "pow", "--n", "1..6", "--m", "2..4", "--jobs", "3"}).code, 0);
  EXPECT_EQ(run({"verify", "fib_prime", "--p-max", "60"}).code, 0);
  EXPECT_EQ(run({"verify", "weights", "--m", "1..12"}).code, 0);
  EXPECT_EQ(run({"chiral", "fib", "--m", "1..12"}).code, 0);
  EXPECT_EQ(run({"classify", "11,19,47,89"}).code, 0);
  const auto ss = parse(run({"verify", "self_similarity", "--p", "5,19"}));
  EXPECT_EQ(ss["results"][0]["status"], "special");
  EXPECT_EQ(ss["results"][1]["status"], "match");
}

TEST(Cli, ParallelOutputMatchesSerial) {
  const auto a = run({"verify", "phi_p", "--p", "3,5", "--m", "1..9"});
  const auto b = run({"--jobs", "4", "verify", "phi_p", "--p", "3,5", "--m", "1..9"});
  auto da = parse(a), db = parse(b);
  EXPECT_EQ(da["results"], db["results"]);
}

TEST(Cli, MinimaDeterministicAndExitCodes) {
  const std::vector<std::string> args{"--seed", "9", "minima", "--samples", "50000"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(run({"--seed", "10", "minima", "--samples", "50000"}).out, a.out);
  EXPECT_EQ(run({"minima", "--samples", "1"}).code, 1);
  EXPECT_EQ(run({"minima", "--analytic-only"}).code, 0);
  const auto ranged = parse(run({"minima", "--range=-2..3", "--samples", "1000"}));
  EXPECT_EQ(ranged["results"].size(), 6u);
  EXPECT_EQ(ranged["results"][0]["n"], -2);
  EXPECT_EQ(run({"minima", "--mode", "sphere"}).code, 2);
}

TEST(Cli, CsvAndText) {
  const auto csv = run({"--format", "csv", "landscape", "fib", "5"});
  EXPECT_EQ(csv.out, "length,count\n1,1\n4,1\n20,1\n");
  const auto text = run({"--format", "text", "pisano", "9..10"});
  EXPECT_NE(text.out.find(" m  pisano"), std::string::npos);
  const auto mcsv = run({"--format", "csv", "minima", "--samples", "100", "--range", "0..1"});
  EXPECT_EQ(mcsv.out.substr(0, mcsv.out.find('\n')), "n,P,P_hat,se,within_3se");
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const auto cfg = temp_file("config.json");
  std::ofstream(cfg) << R"({"output_format": "csv", "state_cap": 10, "rng_seed": 5})";
  const auto capped = run({"--config", cfg.string(), "landscape", "fib", "5"});
  EXPECT_EQ(capped.code, 3);
  const auto flags = run({"--config", cfg.string(), "--state-cap", "100", "landscape", "fib", "5"});
  EXPECT_EQ(flags.code, 0);
  EXPECT_EQ(flags.out, "length,count\n1,1\n4,1\n20,1\n");
  const auto json_out = run({"--config", cfg.string(), "--format", "json", "--state-cap", "100", "pisano", "3"});
  EXPECT_EQ(parse(json_out)["config"]["rng_seed"], 5);

  std::ofstream(cfg) << R"({"colour": "blue"})";
  EXPECT_EQ(run({"--config", cfg.string(), "pisano", "3"}).code, 2);
  EXPECT_EQ(run({"--config", "/nonexistent/periodscape.json", "pisano", "3"}).code, 2);
  std::filesystem::remove(cfg);
}

TEST(Cli, OutputFile) {
  const auto path = temp_file("out.json");
  const auto r = run({"--output", path.string(), "pisano", "1..4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto doc = json::parse(in);
  EXPECT_EQ(doc["results"][3]["pisano"], 6);
  std::filesystem::remove(path);
}
