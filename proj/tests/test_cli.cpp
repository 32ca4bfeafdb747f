#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/cli.hpp"

using fixtures::data_arg;
using fixtures::run_cli;
namespace fs = std::filesystem;

namespace {

const std::string kGoldenRun = "run " + data_arg("manifest.json") + " --config " + data_arg("config.json") +
                               " --script " + data_arg("script.json") + " --out runs --run-id golden";

}  // namespace

TEST_CASE("scripted golden run, replay and evaluation") {
  fixtures::TempDir dir("cli");
  const auto run = run_cli(kGoldenRun, dir.path());
  REQUIRE(run.exit_code == 0);
  const auto j = run.json();
  CHECK(j["command"] == "run");
  CHECK(j["ok"] == true);
  CHECK(j["run_id"] == "golden");
  CHECK(j["stage_timings"].size() == 4);
  CHECK(j["reports"].size() == 6);
  for (const auto& [kind, status] : j["reports"].items()) CHECK(status["valid"] == true);
  CHECK(fs::exists(dir.path() / "runs" / "golden" / "alert_map.png"));

  const auto again = run_cli(kGoldenRun, dir.path());
  CHECK(again.exit_code == 4);
  CHECK(again.json()["ok"] == false);

  const auto replay = run_cli("replay runs/golden --out replays", dir.path());
  CHECK(replay.exit_code == 0);
  CHECK(replay.json()["verdict"] == "identical");

  const auto eval = run_cli("evaluate runs/golden --config " + data_arg("config.json") + " --script " +
                                data_arg("evaluator_script.json") + " --rounds 5 --human-scores " +
                                data_arg("human_scores.csv") + " --out eval",
                            dir.path());
  REQUIRE(eval.exit_code == 0);
  const auto ej = eval.json();
  CHECK(ej["scores"] == 80);
  CHECK(ej["comparison"].size() == 8);
  CHECK(ej["errors"].empty());
  CHECK(fs::exists(dir.path() / "eval" / "comparison.json"));

  const auto single = run_cli("evaluate runs/golden --config " + data_arg("config.json") + " --script " +
                                  data_arg("evaluator_script.json") + " --out eval1",
                              dir.path());
  CHECK(single.exit_code == 0);
  CHECK(single.json()["scores"] == 8);
}

TEST_CASE("live backend without a key fails with exit 5 before any request") {
  fixtures::TempDir dir("nokey");
  const auto r = run_cli("run " + data_arg("manifest.json") + " --config " + data_arg("config.json") +
                             " --backend live --out runs",
                         dir.path(), "env -u DISASTELLER_API_KEY");
  CHECK(r.exit_code == 5);
  CHECK(r.err.find("DISASTELLER_API_KEY") != std::string::npos);
  CHECK(r.json()["ok"] == false);
}

TEST_CASE("a manifest naming a missing image exits 2") {
  fixtures::TempDir dir("noimg");
  fixtures::copy_scenario(dir.path() / "wajima");
  fs::remove(dir.path() / "wajima" / "images" / "site_04.jpg");
  const auto r = run_cli("run wajima/manifest.json --config " + data_arg("config.json") + " --script " +
                             data_arg("script.json") + " --out runs",
                         dir.path());
  CHECK(r.exit_code == 2);
  CHECK(r.json()["error"]["code"] == "ScenarioInvalid");
  CHECK_FALSE(fs::exists(dir.path() / "runs"));
}

TEST_CASE("config validation") {
  fixtures::TempDir dir("cfg");
  const auto ok = run_cli("validate-config " + data_arg("config.json"), dir.path());
  CHECK(ok.exit_code == 0);
  CHECK(ok.json()["config"]["retrieval"]["chunk_size"] == 300);

  fixtures::write_text(dir.path() / "bad.json", R"({"retrieval": {"chunk_size": 100, "overlap": 100}})");
  const auto bad = run_cli("validate-config bad.json", dir.path());
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("retrieval.overlap") != std::string::npos);
  CHECK(bad.json()["error"]["code"] == "ConfigError");

  fixtures::write_text(dir.path() / "unknown.json", R"({"retreival": {}})");
  CHECK(run_cli("validate-config unknown.json", dir.path()).exit_code == 2);
  CHECK(run_cli("validate-config", dir.path()).exit_code == 2);
  CHECK(run_cli("no-such-command", dir.path()).exit_code == 2);
}

TEST_CASE("index command") {
  fixtures::TempDir dir("idx");
  const auto r = run_cli("index " + data_arg("ems98_summary.txt") + " --out idx --chunk-size 120 --overlap 20",
                         dir.path());
  REQUIRE(r.exit_code == 0);
  CHECK(r.json()["chunk_size"] == 120);
  CHECK(r.json()["chunks"].get<int>() > 7);
  CHECK(run_cli("index " + data_arg("ems98_summary.txt") + " --out idx", dir.path()).exit_code == 4);

  const auto run = run_cli(kGoldenRun + " --index idx", dir.path());
  CHECK(run.exit_code == 0);

  fixtures::write_text(dir.path() / "empty.txt", "\n");
  CHECK(run_cli("index empty.txt --out idx2", dir.path()).exit_code == 2);
}

TEST_CASE("a stage failure exits 3 and still persists the run") {
  fixtures::TempDir dir("fail");
  auto script = fixtures::read_json(fixtures::script());
  for (auto& e : script) {
    if (e["stage"] == "alerts") e["response"]["text"] = "# Alert News\n\nnothing useful\n";
  }
  for (int i = 1; i <= 2; ++i) {
    auto extra = nlohmann::json{{"stage", "alerts"}, {"index", i},
                                {"response", {{"text", "# Alert News\n\nstill nothing\n"}}}};
    script.push_back(extra);
  }
  fixtures::write_text(dir.path() / "script.json", script.dump());
  const auto r = run_cli("run " + data_arg("manifest.json") + " --config " + data_arg("config.json") +
                             " --script script.json --out runs --run-id broken",
                         dir.path());
  CHECK(r.exit_code == 3);
  CHECK(r.json()["ok"] == false);
  CHECK(r.json()["failure"]["code"] == "FormatRetriesExhausted");
  CHECK(r.json()["failure"]["skipped"] == nlohmann::json::array({"assignment"}));
  CHECK(fs::exists(dir.path() / "runs" / "broken" / "manifest.json"));
  CHECK(fs::exists(dir.path() / "runs" / "broken" / "reports" / "alert_news.json"));
}
