#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "amir/cli/app.hpp"
#include "amir/cli/config.hpp"
#include "amir/cli/pipeline.hpp"
#include "amir/cli/service.hpp"
#include "amir/error.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace amir;
using namespace amir::cli;

namespace {

const fs::path kMini = fs::path(AMIR_SOURCE_DIR) / "data" / "mini";

// The bundled mini config with every input made absolute, so a copy can
// live anywhere.
json mini_config() {
  json j = json::parse(test::read_file(kMini / "config.json"));
  for (auto& [key, value] : j["paths"].items()) value = fs::weakly_canonical(kMini / value.get<std::string>()).string();
  return j;
}

fs::path write_config(const test::TempDir& dir, const json& j, const std::string& name = "config.json") {
  const auto p = dir.path() / name;
  test::write_file(p, j.dump(2));
  return p;
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "amir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("config loading resolves paths and rejects bad settings") {
  test::TempDir dir;
  const auto ok = load_config(write_config(dir, mini_config()));
  CHECK(ok.out_dir == dir.path() / "out");
  CHECK(ok.tweet_topics.k_min == 5);
  CHECK(ok.mapping_method == MappingMethod::Distance);

  ConfigOverrides ov;
  ov.seed = 99;
  ov.threshold = 0.5;
  const auto over = load_config(write_config(dir, mini_config()), ov);
  CHECK(over.lda.seed == 99);
  CHECK(over.specific_threshold == 0.5);

  auto bad = mini_config();
  bad["mapping"]["method"] = "jsd";
  CHECK_THROWS_AS(load_config(write_config(dir, bad, "b1.json")), ConfigInvalid);
  bad = mini_config();
  bad["surprise"] = 1;
  CHECK_THROWS_AS(load_config(write_config(dir, bad, "b2.json")), ConfigInvalid);
  bad = mini_config();
  bad["paths"]["tweets"] = "/nonexistent/tweets.jsonl";
  CHECK_THROWS_AS(load_config(write_config(dir, bad, "b3.json")), ConfigInvalid);
  bad = mini_config();
  bad["tweet_topics"]["k_min"] = 1;
  CHECK_THROWS_AS(load_config(write_config(dir, bad, "b4.json")), ConfigInvalid);
  test::write_file(dir.path() / "b5.json", "{not json");
  CHECK_THROWS_AS(load_config(dir.path() / "b5.json"), ConfigInvalid);
  CHECK_THROWS_AS(load_config(dir.path() / "missing.json"), ConfigInvalid);
}

TEST_CASE("CLI exit codes: usage and config errors exit 2, stale upstream exits 3") {
  test::TempDir dir;
  const auto cfg = write_config(dir, mini_config()).string();
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"fit-topics"}).code == kExitConfig);
  CHECK(invoke({"ingest", "--config", (dir.path() / "nope.json").string()}).code == kExitConfig);

  const auto stale = invoke({"map-topics", "--config", cfg});
  CHECK(stale.code == kExitStale);
  CHECK(stale.err.find("stale upstream") != std::string::npos);

  CHECK(invoke({"ingest", "--config", cfg}).code == kExitOk);
  CHECK(invoke({"map-topics", "--config", cfg}).code == kExitStale);
  CHECK(invoke({"fit-topics", "--config", cfg}).code == kExitOk);
  CHECK(invoke({"map-topics", "--config", cfg}).code == kExitOk);
}

TEST_CASE("a full run is skipped when current and redone after an input changes") {
  test::TempDir dir;
  auto j = mini_config();
  const auto cfg = write_config(dir, j).string();
  const auto first = invoke({"run", "--config", cfg});
  REQUIRE(first.code == kExitOk);
  CHECK(first.out.find("evaluate: wrote") != std::string::npos);

  const auto second = invoke({"run", "--config", cfg});
  CHECK(second.code == kExitOk);
  CHECK(second.out.find("wrote") == std::string::npos);
  CHECK(second.out.find("ingest: up to date") != std::string::npos);

  // A setting change invalidates the stages that read it and everything downstream.
  const auto third = invoke({"run", "--config", cfg, "--threshold", "0.7"});
  CHECK(third.code == kExitOk);
  CHECK(third.out.find("fit-topics: up to date") != std::string::npos);
  CHECK(third.out.find("recommend-fc: wrote") != std::string::npos);

  // The manifest now records 0.7, so the file's own threshold reads as stale.
  const auto config = load_config(cfg);
  CHECK(stage_is_current(config, Stage::Ingest));
  CHECK_FALSE(stage_is_current(config, Stage::RecommendFc));
}

TEST_CASE("the mini corpus produces all three tiers and identical trees across runs") {
  test::TempDir dir;
  const auto cfg_path = write_config(dir, mini_config());
  ConfigOverrides a;
  a.out = dir.path() / "a";
  ConfigOverrides b;
  b.out = dir.path() / "b";
  run_all(load_config(cfg_path, a));
  run_all(load_config(cfg_path, b));

  const auto tiers = json::parse(test::read_file(*a.out / "recommend-fc" / "tiers.json"));
  CHECK(tiers["Specific"].get<int>() > 0);
  CHECK(tiers["Near"].get<int>() > 0);
  CHECK(tiers["Broad"].get<int>() > 0);

  for (const auto& e : fs::recursive_directory_iterator(*a.out)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), *a.out);
    INFO(rel.string());
    CHECK(test::read_file(e.path()) == test::read_file(*b.out / rel));
  }

  const auto report = test::read_file(*a.out / "evaluate" / "report.txt");
  CHECK(report.find("AMIR_SM") != std::string::npos);
  CHECK(report.find("MAP@20") != std::string::npos);
}

TEST_CASE("the service validates requests and answers both approaches") {
  test::TempDir dir;
  const auto cfg = load_config(write_config(dir, mini_config()));

  const RebuttalService cold(cfg);
  CHECK_FALSE(cold.ready());
  CHECK(cold.health().status == 503);
  CHECK(cold.rebuttal(R"({"text":"x"})").status == 503);

  run_all(cfg);
  const RebuttalService svc(cfg);
  REQUIRE(svc.ready());
  CHECK(svc.health().status == 200);
  CHECK(svc.health().body["artifacts"].size() > 0);

  CHECK(svc.rebuttal("{bad").status == 400);
  CHECK(svc.rebuttal("[]").status == 400);
  CHECK(svc.rebuttal(R"({"text":"   "})").status == 400);
  CHECK(svc.rebuttal(R"({"text":"vaccine","approach":"xx"})").status == 400);
  CHECK(svc.rebuttal(R"({"text":"vaccine","k":0})").status == 400);
  CHECK(svc.rebuttal(R"({"text":"vaccine","k":"3"})").status == 400);
  CHECK(svc.rebuttal(R"({"text":"zzzz qqqq xxxx"})").status == 422);

  const auto fc = svc.rebuttal(
      R"({"text":"they all used aborted fetus in the vaccine, astrazeneca johnson and johnson have fetal cell lines","k":3})");
  REQUIRE(fc.status == 200);
  CHECK(fc.body["approach"] == "fc");
  CHECK(fc.body["items"].size() <= 3);
  CHECK(fc.body["items"].size() >= 1);

  const auto sm = svc.rebuttal(R"({"text":"astrazeneca vaccine is dubious, not taking it","approach":"sm","k":5})");
  REQUIRE(sm.status == 200);
  CHECK(sm.body["approach"] == "sm");
  CHECK(sm.body["tier"].is_null());
}

TEST_CASE("HTTP frontend serves on an ephemeral port") {
  test::TempDir dir;
  const auto cfg = load_config(write_config(dir, mini_config()));
  run_all(cfg);
  const RebuttalService svc(cfg);
  HttpFrontend http(svc);
  const int port = http.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { http.listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  httplib::Result health;
  for (int attempt = 0; attempt < 50 && !health; ++attempt) {
    health = client.Get("/v1/health");
    if (!health) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  REQUIRE(health);
  CHECK(health->status == 200);

  const auto ok = client.Post("/v1/rebuttal", R"({"text":"operation warp speed money","approach":"fc"})",
                              "application/json");
  REQUIRE(ok);
  CHECK(ok->status == 200);
  CHECK(json::parse(ok->body).contains("tier"));

  const auto bad = client.Post("/v1/rebuttal", "nope", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  http.stop();
  server.join();
}

TEST_CASE("an output directory admits one writer at a time") {
  test::TempDir dir;
  const OutputLock first(dir.path());
  CHECK_THROWS_AS(OutputLock(dir.path()), Error);
}
