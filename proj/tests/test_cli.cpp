#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "randmeas/cli.hpp"
#include "randmeas/report.hpp"

using namespace randmeas;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_lambda_profile: the four families and their errors") {
  const auto uniform = parse_lambda_profile("uniform:4");
  REQUIRE(uniform.size() == 4);
  CHECK(uniform[0] == doctest::Approx(0.25));

  const auto geometric = parse_lambda_profile("geometric:0.5:3");
  REQUIRE(geometric.size() == 3);
  CHECK(geometric[0] == doctest::Approx(0.5));
  CHECK(geometric[2] == doctest::Approx(0.125));

  const auto spike = parse_lambda_profile("spike:0.5:2:0.001");
  REQUIRE(spike.size() == 3);
  CHECK(spike[0] == doctest::Approx(0.5));
  CHECK(spike[1] == doctest::Approx(0.001));

  const auto two_scale = parse_lambda_profile("two-scale:0.25:2:0.005:100");
  REQUIRE(two_scale.size() == 102);

  CHECK_THROWS_AS(parse_lambda_profile("uniform"), std::invalid_argument);
  CHECK_THROWS_AS(parse_lambda_profile("geometric:1.5:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_lambda_profile("mystery:1"), std::invalid_argument);
}

TEST_CASE("csv_field escaping and format_double round-trip") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  for (double v : {0.1, 1.0 / 3.0, 2.1715792741453212e-07, -745.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("run_concentration: artifacts, pass flag, unknown experiment") {
  ConcentrationConfig config;
  config.exp = "chi-square";
  config.n = 10;
  config.eps = 0.5;
  config.trials = 2000;
  config.seed = 7;
  config.threads = 2;
  const RunArtifacts artifacts = run_concentration(config);
  CHECK(artifacts.has_pass_rule);
  CHECK(artifacts.pass);
  CHECK(artifacts.csv.rfind("experiment,trial,value", 0) == 0);
  CHECK(artifacts.summary_csv.rfind(
            "experiment,params,trials,statistic,bound,std_err,pass", 0) == 0);

  const auto json = nlohmann::json::parse(artifacts.json);
  CHECK(json["schema_version"] == 1);
  CHECK(json["artifact"] == "randmeas 0.1.0");
  CHECK(json["reports"][0]["trials"] == 2000);

  config.exp = "nonsense";
  CHECK_THROWS_AS(run_concentration(config), std::invalid_argument);
}

TEST_CASE("run_distinguish: row counts and thread determinism") {
  DistinguishConfig config;
  config.n = 8;
  config.mode = "povm-ancilla";
  config.ancilla_k = 2;
  config.pairs = 3;
  config.trials = 10;
  config.seed = 11;
  config.threads = 1;
  const RunArtifacts a = run_distinguish(config);
  config.threads = 8;
  const RunArtifacts b = run_distinguish(config);
  CHECK(a.csv == b.csv);
  CHECK(a.json == b.json);

  std::size_t lines = 0;
  for (char c : a.csv) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 1 + config.pairs * config.trials);  // header + rows

  const auto json = nlohmann::json::parse(a.json);
  CHECK(json["config"]["seed"] == 11);
  CHECK(json["stats"].contains("frac_tv_ge_0.05f_over_log2m"));
}

TEST_CASE("run_hsp: deterministic across worker counts") {
  HspCliConfig config;
  config.group = "cyclic:6";
  config.runs = 20;
  config.copies = 16;
  config.seed = 3;
  config.threads = 1;
  const RunArtifacts a = run_hsp(config);
  config.threads = 8;
  const RunArtifacts b = run_hsp(config);
  CHECK(a.csv == b.csv);
  CHECK(a.pass);

  config.group = "octahedral:3";
  CHECK_THROWS_AS(run_hsp(config), std::invalid_argument);
}

TEST_CASE("run_identify: small smoke run") {
  IdentifyCliConfig config;
  config.n = 8;
  config.k = 3;
  config.mode = "povm-ancilla";
  config.ancilla_k = 2;
  config.runs = 30;
  config.seed = 5;
  config.threads = 2;
  const RunArtifacts artifacts = run_identify(config);
  CHECK(artifacts.has_pass_rule);
  const auto json = nlohmann::json::parse(artifacts.json);
  CHECK(json["stats"].contains("min_success"));
  CHECK(json["stats"].contains("copies"));
}

TEST_CASE("group_info_text: lists structure") {
  const std::string info = group_info_text("dihedral:4");
  CHECK(info.find("order 8") != std::string::npos);
  CHECK(info.find("subgroups (10)") != std::string::npos);
  CHECK(info.find("w/r distances") != std::string::npos);
}

TEST_CASE("write_artifacts: files on disk and exit codes") {
  RunArtifacts artifacts;
  artifacts.csv = "trial,value\r\n0,1\r\n";
  artifacts.summary_csv = "experiment\r\nx\r\n";
  artifacts.json = "{\"ok\": true}\n";
  artifacts.has_pass_rule = true;
  artifacts.pass = true;

  const std::string path = "/tmp/randmeas_test_out.csv";
  CHECK(write_artifacts(artifacts, path) == 0);
  CHECK(slurp(path) == artifacts.csv);
  CHECK(slurp("/tmp/randmeas_test_out.summary.csv") == artifacts.summary_csv);
  CHECK(slurp("/tmp/randmeas_test_out.json") == artifacts.json);

  artifacts.pass = false;
  CHECK(write_artifacts(artifacts, path) == 2);
  artifacts.has_pass_rule = false;
  CHECK(write_artifacts(artifacts, path) == 0);

  std::remove(path.c_str());
  std::remove("/tmp/randmeas_test_out.summary.csv");
  std::remove("/tmp/randmeas_test_out.json");
}

}  // TEST_SUITE
