#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "akgeo/cli.hpp"

using namespace akgeo;

namespace {

struct CliResult {
  int code = -1;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("akgeo");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(int(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

// A chart description that parses cleanly but carries a negative-definite
// derived metric (J has the flipped orientation), so structure validation
// fails and jet-level construction throws.
const char* kNegativeDefiniteJson = R"({
  "schema": "akgeo-chart/1",
  "label": "negdef",
  "n": 1,
  "domain": { "lo": [-1, -1], "hi": [1, 1] },
  "kappa": [ { "a": 0, "b": 1, "terms": [ { "exps": [0, 0], "coeff": 1.0 } ] } ],
  "J": [
    { "a": 1, "b": 0, "terms": [ { "exps": [0, 0], "coeff": -1.0 } ] },
    { "a": 0, "b": 1, "terms": [ { "exps": [0, 0], "coeff": 1.0 } ] }
  ]
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("list prints every catalog entry") {
  CliResult r = run({"list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("flat_kahler") != std::string::npos);
  CHECK(r.out.find("kodaira_thurston") != std::string::npos);
  CHECK(r.out.find("symplectic_twist_r4") != std::string::npos);
  CHECK(r.out.find("expected verdict") != std::string::npos);
}

TEST_CASE("list --json emits a machine-readable catalog") {
  CliResult r = run({"list", "--json", "-"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  std::vector<std::string> ids;
  for (const auto& e : doc) {
    ids.push_back(e.at("id").get<std::string>());
    CHECK(e.contains("summary"));
    CHECK(e.contains("params"));
    CHECK(e.contains("expected_verdict"));
  }
  CHECK(ids == std::vector<std::string>{"flat_kahler", "kodaira_thurston",
                                        "symplectic_twist_r4"});
}

TEST_CASE("verify passes on clean charts") {
  CliResult flat = run({"verify", "flat_kahler", "--param", "n=1",
                        "--samples", "10"});
  CHECK(flat.code == 0);
  CHECK(flat.out.find("result: PASS") != std::string::npos);

  CliResult kt = run({"verify", "kodaira_thurston", "--samples", "5"});
  CHECK(kt.code == 0);
  CHECK(kt.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify accepts the calibrated twist at every strength") {
  // The twisted structure stays calibrated for all eps: the conjugating map
  // is symplectic, so positivity never degrades. Strong twists verify clean.
  CliResult r = run({"verify", "symplectic_twist_r4", "--param", "eps=0.9",
                     "--samples", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: PASS") != std::string::npos);
}

TEST_CASE("verify writes the requested JSON report") {
  auto path = temp_file("akgeo_cli_verify.json");
  CliResult r = run({"verify", "flat_kahler", "--param", "n=1", "--samples",
                     "5", "--json", path.string()});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  auto doc = nlohmann::json::parse(in);
  CHECK(doc.at("schema") == "akgeo-verify/1");
  CHECK(doc.at("chart") == "flat_kahler_n1");
  CHECK(doc.at("pass") == true);
  CHECK(doc.at("validation").is_array());
  CHECK(doc.at("identities").size() == 16);
  CHECK(doc.at("wr1_variant") == "both");
  std::remove(path.string().c_str());
}

TEST_CASE("tolerance overrides reach the identity suite") {
  // An absurdly tight curvature tolerance must flip the verify outcome.
  CliResult r = run({"verify", "kodaira_thurston", "--samples", "3", "--tol",
                     "second_order=1e-20"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("diagnose reports the verdict and exits zero") {
  CliResult r = run({"diagnose", "kodaira_thurston", "--samples", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: non-integrable") != std::string::npos);
  CHECK(r.out.find("nijenhuis") != std::string::npos);

  CliResult flat = run({"diagnose", "flat_kahler", "--samples", "5"});
  CHECK(flat.code == 0);
  CHECK(flat.out.find("verdict: kahler-consistent") != std::string::npos);
}

TEST_CASE("identical configurations produce identical bytes") {
  std::vector<std::string> args = {"diagnose", "kodaira_thurston", "--samples",
                                   "4", "--seed", "11", "--json", "-"};
  CliResult a = run(args);
  CliResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"schema\": \"akgeo-report/1\"") != std::string::npos);
}

TEST_CASE("frame prints residuals and components") {
  CliResult r = run({"frame", "kodaira_thurston", "--point", "0,0,0,0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("condition residuals") != std::string::npos);
  CHECK(r.out.find("Z_1") != std::string::npos);
  CHECK(r.out.find("Z_2") != std::string::npos);

  // Default point is the domain center.
  CliResult centered = run({"frame", "kodaira_thurston"});
  CHECK(centered.code == 0);
  CHECK(centered.out.find("frame at (0, 0, 0, 0)") != std::string::npos);
}

TEST_CASE("frame --json captures the order-0 components") {
  CliResult r = run({"frame", "flat_kahler", "--param", "n=2", "--json", "-"});
  CHECK(r.code == 0);
  auto start = r.out.find('{');
  REQUIRE(start != std::string::npos);
  auto doc = nlohmann::json::parse(r.out.substr(start));
  CHECK(doc.at("schema") == "akgeo-frame/1");
  CHECK(doc.at("order") == 3);
  REQUIRE(doc.at("frame").size() == 2);
  REQUIRE(doc.at("frame")[0].size() == 4);
  CHECK(doc.at("frame")[0][0].size() == 2);
  for (const auto& [name, value] : doc.at("residuals").items()) {
    (void)name;
    CHECK(value.get<double>() <= 1e-10);
  }
}

TEST_CASE("bad input exits with code 2") {
  CHECK(run({"verify", "no_such_chart"}).code == 2);
  CHECK(run({"verify"}).code == 2);  // no chart named
  CHECK(run({"verify", "flat_kahler", "--param", "bogus=1"}).code == 2);
  CHECK(run({"verify", "flat_kahler", "--param", "n"}).code == 2);
  CHECK(run({"verify", "flat_kahler", "--tol", "nope=1"}).code == 2);
  CHECK(run({"verify", "flat_kahler", "--samples", "-3"}).code == 2);
  CHECK(run({"frame", "kodaira_thurston", "--point", "9,0,0,0"}).code == 2);
  CHECK(run({"frame", "kodaira_thurston", "--point", "0,0"}).code == 2);
  CHECK(run({"frame", "kodaira_thurston", "--point", "0,zero,0,0"}).code == 2);
  CHECK(run({"frame", "kodaira_thurston", "--order", "2"}).code == 2);
  CHECK(run({"diagnose", "flat_kahler", "--json",
             "/no/such/directory/report.json"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);

  CliResult unknown = run({"verify", "no_such_chart"});
  CHECK(unknown.err.find("unknown chart") != std::string::npos);
}

TEST_CASE("help exits zero") {
  CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Usage") != std::string::npos);
  CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("chart files flow through every command") {
  auto path = temp_file("akgeo_cli_negdef.json");
  {
    std::ofstream out(path);
    out << kNegativeDefiniteJson;
  }
  // Structure validation catches the broken metric and reports failure.
  CliResult verify = run({"verify", path.string(), "--samples", "5"});
  CHECK(verify.code == 1);
  CHECK(verify.out.find("FAIL") != std::string::npos);
  CHECK(verify.out.find("identity suite skipped") != std::string::npos);

  // Jet-level construction refuses the broken metric outright.
  CliResult diagnose = run({"diagnose", path.string(), "--samples", "5"});
  CHECK(diagnose.code == 3);
  CHECK(diagnose.err.find("structure failure") != std::string::npos);

  // Parameters make no sense for file charts.
  CliResult with_param =
      run({"verify", path.string(), "--param", "eps=1"});
  CHECK(with_param.code == 2);
  std::remove(path.string().c_str());

  CliResult missing = run({"verify", "no_such_file.json"});
  CHECK(missing.code == 2);
}

TEST_CASE("seed comes from the environment unless a flag overrides it") {
  setenv("AKGEO_SEED", "31", 1);
  CliResult from_env = run({"diagnose", "flat_kahler", "--samples", "3"});
  CHECK(from_env.out.find("seed 31") != std::string::npos);
  CliResult from_flag =
      run({"diagnose", "flat_kahler", "--samples", "3", "--seed", "5"});
  CHECK(from_flag.out.find("seed 5") != std::string::npos);
  unsetenv("AKGEO_SEED");
  CliResult fallback = run({"diagnose", "flat_kahler", "--samples", "3"});
  CHECK(fallback.out.find("seed 42") != std::string::npos);
}

}  // TEST_SUITE
