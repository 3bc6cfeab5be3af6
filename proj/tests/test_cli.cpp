#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cli_runner.hpp"

using cli_test::RunResult;
using cli_test::run_cli;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/flatnewt_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kDiamondJson = R"({"pieces":[
  {"type":"segment","from":[1,0],"to":[0,1]},
  {"type":"segment","from":[0,1],"to":[-1,0]},
  {"type":"segment","from":[-1,0],"to":[0,-1]},
  {"type":"segment","from":[0,-1],"to":[1,0]}]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("domain-info reports geometry and classification") {
  RunResult r = run_cli({"domain-info", "--gen", "diamond"});
  REQUIRE(r.exit_code == 0);
  json j = r.json();
  CHECK(j["command"] == "domain-info");
  CHECK(j["domain_summary"]["area"].get<double>() == 2.0);
  CHECK(j["domain_summary"]["support_right"]["kind"] == "Angular");
  CHECK(j["domain_summary"]["singular_points"]["many"].get<bool>());
  CHECK(j["certificates"].is_array());
  CHECK(j["certificates"].empty());
  CHECK(j["verdicts"].is_array());
  CHECK(j["provenance"]["tool_version"].is_string());
}

TEST_CASE("domain-info accepts a JSON boundary file") {
  std::string path = write_temp("diamond.json", kDiamondJson);
  RunResult r = run_cli({"domain-info", "--domain", path});
  REQUIRE(r.exit_code == 0);
  CHECK(r.json()["domain_summary"]["area"].get<double>() == 2.0);
  std::remove(path.c_str());
}

TEST_CASE("bad domain flags exit with the input-error code") {
  CHECK(run_cli({"domain-info", "--gen", "bogus"}).exit_code == 3);
  CHECK(run_cli({"domain-info"}).exit_code == 3);
  CHECK(run_cli({"domain-info", "--domain", "/nonexistent/x.json"}).exit_code == 3);
  std::string bad = write_temp("bad.json", "{not json");
  CHECK(run_cli({"domain-info", "--domain", bad}).exit_code == 3);
  std::string both = write_temp("both.json", kDiamondJson);
  CHECK(run_cli({"domain-info", "--gen", "diamond", "--domain", both}).exit_code == 3);
  std::remove(bad.c_str());
  std::remove(both.c_str());
}

TEST_CASE("unknown options and out-of-range values exit with the input-error code") {
  CHECK(run_cli({"domain-info", "--gen", "diamond", "--frobnicate"}).exit_code == 3);
  CHECK(run_cli({"domain-info", "--gen", "diamond", "--n-poly", "2"}).exit_code == 3);
  CHECK(run_cli({"witness", "--gen", "disk", "--threshold", "-5"}).exit_code == 3);
  CHECK(run_cli({}).exit_code == 3);  // a subcommand is required
  CHECK(run_cli({"frobnicate"}).exit_code == 3);
}

TEST_CASE("help exits cleanly and names the subcommands") {
  RunResult r = run_cli({"--help"});
  CHECK(r.exit_code == 0);
}

TEST_CASE("k-estimate emits a certified interval and honors the seed") {
  std::vector<std::string> args = {"k-estimate", "--gen",  "diamond",
                                   "--restarts", "4",      "--iters",
                                   "40",         "--seed", "7",
                                   "--apex-counts", "1,2"};
  RunResult r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  json j = r.json();
  CHECK(j["command"] == "k-estimate");
  CHECK(j["k_estimate"]["lower"].get<double>() >= 1.0 - 1e-9);
  CHECK(j["k_estimate"]["upper"].is_number());
  CHECK(j["k_estimate"]["lower"].get<double>() <=
        j["k_estimate"]["upper"].get<double>() + 1e-9);
  CHECK(j["provenance"]["seed"].get<int>() == 7);
  CHECK(j["provenance"]["budget"]["restarts"].get<int>() == 4);

  RunResult again = run_cli(args);
  CHECK(again.exit_code == 0);
  CHECK(again.out == r.out);  // byte-identical reruns
}

TEST_CASE("k-estimate on the disk reports an unbounded ceiling") {
  RunResult r = run_cli({"k-estimate", "--gen", "disk", "--restarts", "2", "--iters",
                         "30", "--apex-counts", "1", "--seed", "3"});
  REQUIRE(r.exit_code == 0);
  json j = r.json();
  CHECK(j["k_estimate"]["upper"] == "unbounded");
  CHECK(j["domain_summary"]["support_right"]["kind"] == "Tangent");
}

TEST_CASE("witness run on the disk certifies the requested threshold") {
  RunResult r = run_cli({"witness", "--gen", "disk", "--threshold", "100"});
  REQUIRE(r.exit_code == 0);
  json j = r.json();
  REQUIRE(j["certificates"].size() == 1);
  json cert = j["certificates"][0];
  CHECK(cert["achieved_ratio"].get<double>() >= 100.0);
  CHECK(cert["threshold"].get<double>() == 100.0);
  CHECK(cert["contact"] == "Tangent");
  CHECK(cert["witness"]["ratio"].get<double>() == cert["achieved_ratio"].get<double>());
}

TEST_CASE("witness run on the diamond explains why no certificate exists") {
  RunResult r = run_cli({"witness", "--gen", "diamond", "--threshold", "100"});
  CHECK(r.exit_code == 1);
  json j = r.json();
  CHECK(j["certificates"].empty());
  CHECK(j["hypothesis_failed"]["upper_bound"].is_number());
  CHECK(j["hypothesis_failed"]["upper_bound"].get<double>() < 100.0);
}

TEST_CASE("witness run that cannot reach the threshold reports its best") {
  RunResult r = run_cli({"witness", "--gen", "square", "--threshold", "1e12"});
  CHECK(r.exit_code == 2);
  json j = r.json();
  CHECK(j["budget_exhausted"]["best_ratio"].get<double>() > 1e6);
  CHECK(j["budget_exhausted"]["best_ratio"].get<double>() < 1e12);
}

TEST_CASE("decide runs the full matrix of verdict exit codes") {
  std::vector<std::string> base = {"decide", "--gen", "diamond", "--restarts", "6",
                                   "--iters", "60", "--apex-counts", "1,2", "--seed", "7"};
  auto with = [&](const std::string& integrand) {
    std::vector<std::string> args = base;
    args.push_back("--integrand");
    args.push_back(integrand);
    return run_cli(args);
  };

  RunResult pd = with("quadratic:1,1");
  CHECK(pd.exit_code == 0);
  CHECK(pd.json()["verdicts"][0]["kind"] == "LocalMin");

  RunResult nd = with("newtonian");
  CHECK(nd.exit_code == 1);
  CHECK(nd.json()["verdicts"][0]["kind"] == "NotLocalMin");

  RunResult low = with("quadratic:-1,0.3");
  CHECK(low.exit_code == 1);

  RunResult high = with("quadratic:-1,6");
  CHECK(high.exit_code == 0);
  json hj = high.json();
  CHECK(hj["verdicts"][0]["comparison"]["b_over_a"].get<double>() == 6.0);

  RunResult mid = with("quadratic:-1,2");
  CHECK(mid.exit_code == 2);
  CHECK(mid.json()["verdicts"][0]["kind"] == "Inconclusive");

  RunResult saddle_x = with("custom:1,0,-2");
  CHECK(saddle_x.exit_code == 1);
}

TEST_CASE("decide on the disk needs no search to reject a saddle") {
  RunResult r = run_cli({"decide", "--gen", "disk", "--integrand", "quadratic:-1,1"});
  CHECK(r.exit_code == 1);
  json v = r.json()["verdicts"][0];
  CHECK(v["kind"] == "NotLocalMin");
  CHECK(v["support_right"]["kind"] == "Tangent");
}

TEST_CASE("bad integrand specs exit with the input-error code") {
  CHECK(run_cli({"decide", "--gen", "diamond", "--integrand", "quadratic:1"})
            .exit_code == 3);
  CHECK(run_cli({"decide", "--gen", "diamond", "--integrand", "warp"}).exit_code == 3);
  CHECK(run_cli({"decide", "--gen", "diamond", "--integrand", "custom:1,2"})
            .exit_code == 3);
  CHECK(run_cli({"decide", "--gen", "diamond", "--integrand", "quadratic:a,b"})
            .exit_code == 3);
}

TEST_CASE("oscillation reports growing ratios and lost concavity") {
  RunResult r = run_cli({"oscillation", "--gen", "disk", "--N", "0,1,2", "--grid", "64"});
  REQUIRE(r.exit_code == 0);
  json j = r.json();
  REQUIRE(j["oscillation"].size() == 3);
  json n0 = j["oscillation"][0];
  CHECK(n0["N"].get<int>() == 0);
  CHECK(n0["degenerate"].get<bool>());
  CHECK(n0["ratio"].is_null());
  CHECK(n0["concave"].get<bool>());
  json n1 = j["oscillation"][1], n2 = j["oscillation"][2];
  CHECK(!n1["degenerate"].get<bool>());
  CHECK(!n1["concave"].get<bool>());
  CHECK(n1.contains("concavity_violation"));
  CHECK(n2["ratio"].get<double>() > n1["ratio"].get<double>());
}

TEST_CASE("a config file supplies defaults and flags override it") {
  std::string cfg = write_temp("cfg.json", R"({"gen":"diamond","restarts":4,
    "iters":40,"apex-counts":"1,2","seed":7})");
  RunResult from_cfg = run_cli({"k-estimate", "--config", cfg});
  REQUIRE(from_cfg.exit_code == 0);
  RunResult from_flags = run_cli({"k-estimate", "--gen", "diamond", "--restarts", "4",
                                  "--iters", "40", "--apex-counts", "1,2", "--seed", "7"});
  CHECK(from_cfg.out == from_flags.out);

  RunResult overridden = run_cli({"k-estimate", "--config", cfg, "--seed", "8"});
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.json()["provenance"]["seed"].get<int>() == 8);
  CHECK(overridden.out != from_cfg.out);

  std::string bad = write_temp("badcfg.json", R"({"gen":"diamond","warp":9})");
  CHECK(run_cli({"k-estimate", "--config", bad}).exit_code == 3);
  std::remove(cfg.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("reports and figures can be written to files") {
  std::string out = "/tmp/flatnewt_test_report.json";
  std::string svg = "/tmp/flatnewt_test_fig.svg";
  RunResult r = run_cli({"decide", "--gen", "disk", "--integrand", "quadratic:-1,1",
                         "--out", out, "--svg", svg});
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());  // report went to the file instead of stdout
  json j = json::parse(slurp(out));
  CHECK(j["command"] == "decide");
  std::string fig = slurp(svg);
  CHECK(fig.find("<svg") != std::string::npos);
  std::remove(out.c_str());
  std::remove(svg.c_str());
}

}  // TEST_SUITE
