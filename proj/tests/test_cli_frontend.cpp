#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "flatmod/cli_frontend.hpp"
#include "flatmod/json_io.hpp"

using namespace flatmod;
using io::Json;

namespace {

struct Result {
  int status;
  Json report;
  std::string text;
};

Result run_cmd(const std::string& command, const std::string& json = "",
               cli::RunConfig cfg = {}) {
  cfg.command = command;
  if (!json.empty()) cfg.inline_json = json;
  std::ostringstream out;
  const int status = cli::run(cfg, out);
  return {status, Json::parse(out.str()), out.str()};
}

}  // namespace

TEST_CASE("check-p on R_lambda") {
  const auto r = run_cmd("check-p",
                         R"({"class": {"group": {"family": "SL", "size": 2},
                             "eigs": [{"re": 3, "im": 0, "partition": [1]},
                                      {"re": 0.3333333333333333, "im": 0, "partition": [1]}]}})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["verdict"] == true);
  CHECK(r.report["min_residual"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(r.report["wedge_verdict"] == true);
  CHECK(r.report["tolerance"]["rank_eps"] == 1e-9);
}

TEST_CASE("check-p on a classical class reports the paired list") {
  const auto r = run_cmd("check-p", R"({"group": {"family": "Sp", "size": 2},
                             "eigs": [{"re": 1, "partition": [1, 1]}]})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["verdict"] == false);
  CHECK(r.report["witness"][0]["index"] == 1);
}

TEST_CASE("sl2-catalog") {
  const auto r = run_cmd("sl2-catalog");
  CHECK(r.status == cli::kExitOk);
  std::vector<int> dims;
  for (const auto& e : r.report["entries"]) dims.push_back(e["dim_XC"].get<int>());
  CHECK(dims == std::vector<int>{6, 5, 7, 7, 7});
}

TEST_CASE("solve-commutator") {
  const auto r = run_cmd("solve-commutator", R"({"eigenvalues": [2, 0.5]})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["structure_match"] == true);
  CHECK(r.report["tuple"]["matrices"].size() == 2);
  const auto u = run_cmd("solve-commutator", R"({"partition": [2, 1], "conjugate": true})");
  CHECK(u.status == cli::kExitOk);
}

TEST_CASE("dkappa, stabilizer, generate") {
  const std::string pair = R"({"matrices": [{"re": [[0, 2], [0.5, 0]]}, {"re": [[0, 1], [1, 0]]}]})";
  // B = [[0,2],[1/2,0]] is not the solver's shape; any invertible pair works.
  const auto d = run_cmd("dkappa", pair);
  CHECK(d.status == cli::kExitOk);
  CHECK(d.report["rank_law_holds"] == true);
  const auto s = run_cmd("stabilizer", pair);
  CHECK(s.report["dim"] == d.report["stabilizer_dim"]);
  const auto g = run_cmd("generate", pair);
  CHECK(g.report.contains("irreducible"));
}

TEST_CASE("dims with a sampled point") {
  const auto r = run_cmd("dims", R"({"class": {"group": {"family": "SL", "size": 3},
      "eigs": [{"re": 2, "partition": [1]}, {"re": 0, "im": 1, "partition": [1]},
               {"re": 0, "im": -0.5, "partition": [1]}]}, "sample": true})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["numeric_tangent_XC"] == r.report["dim_XC"]);
  CHECK(r.report["residuals"].contains("tangent_minus_formula"));
}

TEST_CASE("surface solve and verify") {
  const auto r = run_cmd("surface", R"({"punctures": [{"re": [[2, 0], [0, 0.5]]}], "p": 2})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["holds"] == true);
  CHECK(r.report["tuple"]["matrices"].size() == 4);
  const auto bad = run_cmd("surface", R"({"punctures": [{"re": [[2, 0], [0, 1]]}], "p": 1})");
  CHECK(bad.status == cli::kExitInputError);
  CHECK(bad.report["error"]["code"] == "unsolvable-by-theorem");
}

TEST_CASE("isotropic") {
  // Sp(2) = SL(2); K = [[2, 1], [0, 1/2]] preserves the form.
  const auto r = run_cmd("isotropic", R"({"group": {"family": "Sp", "size": 2},
                             "K": {"re": [[2, 1], [0, 0.5]]}})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["dim"] == 1);
}

TEST_CASE("input errors") {
  const auto broken = run_cmd("check-p", "{not json");
  CHECK(broken.status == cli::kExitInputError);
  CHECK(broken.report["error"]["code"] == "invalid-json");
  const auto unknown = run_cmd("no-such-command");
  CHECK(unknown.status == cli::kExitInputError);
  const auto missing = run_cmd("dkappa", "{}");
  CHECK(missing.status == cli::kExitInputError);
  CHECK(missing.report["error"]["code"] == "invalid-input");
  cli::RunConfig zero;
  zero.trials = 0;
  CHECK(run_cmd("verify-theorems", "", zero).status == cli::kExitInputError);
}

TEST_CASE("tolerance flags override input") {
  cli::RunConfig cfg;
  cfg.tol_unit = 1e-6;
  const auto r = run_cmd("sl2-catalog", R"({"tolerance": {"unit_eps": 1e-7, "rank_eps": 1e-10}})", cfg);
  CHECK(r.report["tolerance"]["unit_eps"] == 1e-6);
  CHECK(r.report["tolerance"]["rank_eps"] == 1e-10);
}

TEST_CASE("verify-theorems is deterministic and writes files") {
  cli::RunConfig cfg;
  cfg.trials = 5;
  cfg.seed = 3;
  const auto a = run_cmd("verify-theorems", "", cfg);
  const auto b = run_cmd("verify-theorems", "", cfg);
  CHECK(a.status == cli::kExitOk);
  CHECK(a.text == b.text);
  CHECK(a.report["suites"].size() == 8);

  cfg.output_path = "cli_test_report.json";
  cfg.command = "verify-theorems";
  std::ostringstream sink;
  CHECK(cli::run(cfg, sink) == cli::kExitOk);
  CHECK(sink.str().empty());
  std::ifstream f("cli_test_report.json");
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == a.text);
  std::remove("cli_test_report.json");
}

TEST_CASE("wedge-crosscheck on a single matrix") {
  const auto r = run_cmd("wedge-crosscheck", R"({"matrix": {"re": [[-1, 1], [0, -1]]}})");
  CHECK(r.status == cli::kExitOk);
  CHECK(r.report["agree"] == true);
  CHECK(r.report["wedge_verdict"] == true);
}
