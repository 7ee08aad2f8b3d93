#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "clocus/parallel.hpp"
#include "clocus/report.hpp"

using namespace clocus;

namespace {

Json doc(const char* text) { return Json::parse(text); }

const char* kSmallAnalyze = R"({
  "version": 1,
  "mode": "analyze",
  "field": {"prime": 32003},
  "seed": 3,
  "random": {"k": 3, "h": [2, 2]}
})";

// Saves and restores an environment variable around a scope.
struct EnvGuard {
  std::string name;
  std::optional<std::string> saved;
  EnvGuard(const char* n, const char* value) : name(n) {
    if (const char* old = std::getenv(n)) saved = old;
    ::setenv(n, value, 1);
  }
  ~EnvGuard() {
    if (saved)
      ::setenv(name.c_str(), saved->c_str(), 1);
    else
      ::unsetenv(name.c_str());
  }
};

}  // namespace

TEST_CASE("scenario mode names round-trip") {
  for (ScenarioMode m :
       {ScenarioMode::Analyze, ScenarioMode::VerifyClassification,
        ScenarioMode::ConstructScroll, ScenarioMode::ConstructCubic,
        ScenarioMode::ConstructFourLines})
    CHECK(scenarioModeFromName(scenarioModeName(m)) == m);
  CHECK_THROWS_AS(scenarioModeFromName("frobnicate"), ConfigError);
}

TEST_CASE("configs parse, echo, and re-parse to the same document") {
  ScenarioConfig cfg = parseScenarioConfig(doc(kSmallAnalyze));
  CHECK(cfg.version == kConfigVersion);
  CHECK(cfg.mode == ScenarioMode::Analyze);
  CHECK(cfg.seed == 3);
  CHECK(cfg.field == FieldSpec::prime(32003));

  Json echoed = cfg.echo();
  ScenarioConfig again = parseScenarioConfig(echoed);
  CHECK(again.echo() == echoed);
}

TEST_CASE("schema violations are config errors") {
  // Version handling.
  CHECK_THROWS_AS(parseScenarioConfig(doc(R"({"mode": "analyze"})")),
                  ConfigError);
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 2, "mode": "analyze",
                          "random": {"k": 3, "h": [2, 2]}})")),
                  ConfigError);
  // Unknown keys are rejected rather than ignored.
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "analyze",
                          "random": {"k": 3, "h": [2, 2]},
                          "extra": true})")),
                  ConfigError);
  // Analyze needs exactly one of setup / random and no target.
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "analyze"})")),
                  ConfigError);
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "analyze",
                          "random": {"k": 3, "h": [2, 2]},
                          "setup": {"firstCameras": [], "secondCameras": []}})")),
                  ConfigError);
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "analyze",
                          "random": {"k": 3, "h": [2, 2]},
                          "target": {}})")),
                  ConfigError);
  // Constructions need a target; verification takes no payload.
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "construct-scroll"})")),
                  ConfigError);
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "verify-classification",
                          "random": {"k": 3, "h": [2, 2]}})")),
                  ConfigError);
  // Field specs.
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "analyze", "field": {"prime": 4},
                          "random": {"k": 3, "h": [2, 2]}})")),
                  ConfigError);
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"cfg({"version": 1, "mode": "analyze", "field": "GF(7)",
                          "random": {"k": 3, "h": [2, 2]}})cfg")),
                  ConfigError);
  // Malformed document shapes.
  CHECK_THROWS_AS(parseScenarioConfig(doc(R"([1, 2, 3])")), ConfigError);
  CHECK_THROWS_AS(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "analyze", "seed": "soon",
                          "random": {"k": 3, "h": [2, 2]}})")),
                  ConfigError);
}

TEST_CASE("config files that are missing or unparsable are config errors") {
  CHECK_THROWS_AS(loadScenarioConfig("/nonexistent/clocus.json"), ConfigError);
  const std::string path = "/tmp/clocus_test_bad_config.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(loadScenarioConfig(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("identical configs produce byte-identical reports") {
  ScenarioConfig cfg = parseScenarioConfig(doc(kSmallAnalyze));
  ScenarioResult a = runScenario(cfg);
  ScenarioResult b = runScenario(cfg);
  CHECK(renderReportJson(a.report) == renderReportJson(b.report));
  CHECK_FALSE(a.anyFailed);

  // The embedded config echo is sufficient to reproduce the run.
  ScenarioResult c = runScenario(parseScenarioConfig(a.report["config"]));
  CHECK(renderReportJson(c.report) == renderReportJson(a.report));

  // A different seed changes the sampled setup.
  Json seeded = doc(kSmallAnalyze);
  seeded["seed"] = 4;
  ScenarioResult d = runScenario(parseScenarioConfig(seeded));
  CHECK(renderReportJson(d.report) != renderReportJson(a.report));
}

TEST_CASE("matrix entries accept integers and exact fractions") {
  const char* text = R"({
    "version": 1,
    "mode": "analyze",
    "field": "rationals",
    "seed": 1,
    "setup": {
      "firstCameras": [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
        [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
      ],
      "secondCameras": [
        [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [["1/2", 0, 0, 2], [0, 1, 0, 3], [0, 0, 1, 5]]
      ]
    }
  })";
  ScenarioResult r = runScenario(parseScenarioConfig(doc(text)));
  CHECK_FALSE(r.anyFailed);
  CHECK(r.report["invariants"]["measuredDimension"] == 2);
  CHECK(r.report["invariants"]["measuredDegree"] == 2);

  // The same scalar syntax works over a prime field (1/2 = 16002 mod 32003).
  Json overGf = doc(text);
  overGf["field"] = Json{{"prime", 32003}};
  CHECK_FALSE(runScenario(parseScenarioConfig(overGf)).anyFailed);

  // Division by zero inside a matrix is caught at parse time.
  Json broken = doc(text);
  broken["setup"]["secondCameras"][1][0][0] = "1/0";
  CHECK_THROWS_AS(runScenario(parseScenarioConfig(broken)), ConfigError);

  // So are entries that are not numbers at all.
  Json garbage = doc(text);
  garbage["setup"]["secondCameras"][1][0][0] = "x";
  CHECK_THROWS_AS(runScenario(parseScenarioConfig(garbage)), ConfigError);
}

TEST_CASE("invalid cameras in an explicit setup are config errors") {
  const char* text = R"({
    "version": 1,
    "mode": "analyze",
    "field": {"prime": 101},
    "seed": 1,
    "setup": {
      "firstCameras": [
        [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]],
        [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
      ],
      "secondCameras": [
        [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 2], [0, 1, 0, 3], [0, 0, 1, 5]]
      ]
    }
  })";
  CHECK_THROWS_AS(runScenario(parseScenarioConfig(doc(text))), ConfigError);
}

TEST_CASE("construction failures surface as pipeline errors, not config errors") {
  // Lines 1 and 3 intersect: the config is well-formed, the geometry is not.
  const char* text = R"({
    "version": 1,
    "mode": "construct-four-lines",
    "field": {"prime": 32003},
    "seed": 2,
    "target": {
      "lines": [
        [[1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 0, 1, 0]],
        [[1, 0, -2, 0], [0, 1, 0, -2]]
      ]
    }
  })";
  ScenarioConfig cfg = parseScenarioConfig(doc(text));
  CHECK_THROWS_AS(runScenario(cfg), ConstructionError);

  // Three lines instead of four is a shape problem: config error.
  Json shape = doc(text);
  shape["target"]["lines"].erase(3);
  CHECK_THROWS_AS(runScenario(parseScenarioConfig(shape)), ConfigError);
}

TEST_CASE("classification runs insist on a usable measurement field") {
  CHECK_THROWS_AS(runScenario(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "verify-classification",
                          "field": "rationals"})"))),
                  ConfigError);
  CHECK_THROWS_AS(runScenario(parseScenarioConfig(doc(
                      R"({"version": 1, "mode": "verify-classification",
                          "field": {"prime": 7}})"))),
                  ConfigError);
}

TEST_CASE("text rendering carries one line per check plus the verdict") {
  ScenarioResult r = runScenario(parseScenarioConfig(doc(kSmallAnalyze)));
  std::string text = renderReportText(r.report);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("dimension-matches-expected") != std::string::npos);
  CHECK(text.find("verdict") != std::string::npos);
  // JSON rendering ends with exactly one newline.
  std::string json = renderReportJson(r.report);
  CHECK(json.back() == '\n');
  CHECK(json[json.size() - 2] != '\n');
}

TEST_CASE("the worker pool covers every index exactly once") {
  EnvGuard guard("CLOCUS_THREADS", "3");
  CHECK(workerLimit() == 3);

  std::vector<int> hits(1000, 0);
  parallelFor(1000, [&](int i) { hits[i] += i; });
  long long sum = std::accumulate(hits.begin(), hits.end(), 0LL);
  CHECK(sum == 999LL * 1000 / 2);

  // Exceptions from workers resurface on the calling thread.
  CHECK_THROWS_AS(parallelFor(100,
                              [](int i) {
                                if (i == 37) throw ConfigError("boom");
                              }),
                  ConfigError);
}

TEST_CASE("the worker limit clamps nonsense values") {
  {
    EnvGuard guard("CLOCUS_THREADS", "0");
    CHECK(workerLimit() == 1);
  }
  {
    EnvGuard guard("CLOCUS_THREADS", "banana");
    CHECK(workerLimit() == 1);
  }
  CHECK(workerLimit() >= 1);
}
