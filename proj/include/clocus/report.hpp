#ifndef CLOCUS_REPORT_HPP
#define CLOCUS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "clocus/field.hpp"
#include "clocus/version.hpp"

namespace clocus {

// Reports keep their keys in insertion order so identical runs produce
// identical bytes.
using Json = nlohmann::ordered_json;

enum class ScenarioMode {
  Analyze,
  VerifyClassification,
  ConstructScroll,
  ConstructCubic,
  ConstructFourLines,
};

std::string scenarioModeName(ScenarioMode mode);
ScenarioMode scenarioModeFromName(const std::string& name);

// A parsed scenario document.  Payload members keep their JSON form and are
// interpreted over the configured field when the scenario runs.
struct ScenarioConfig {
  int version = kConfigVersion;
  ScenarioMode mode = ScenarioMode::Analyze;
  FieldSpec field = FieldSpec::prime(32003);
  std::uint64_t seed = 1;
  Json setup;    // explicit cameras            (analyze)
  Json random;   // {"k": int, "h": [ints]}     (analyze)
  Json target;   // construction input          (construct-*)
  std::optional<std::string> outputPath;

  // Normalized copy of the document, defaults filled in; shipped inside
  // reports so any run can be reproduced from its own output.
  Json echo() const;
};

// Both throw ConfigError on schema violations.
ScenarioConfig parseScenarioConfig(const Json& doc);
ScenarioConfig loadScenarioConfig(const std::string& path);

struct ScenarioResult {
  Json report;
  bool anyFailed = false;
};

// Dispatches on mode and field, assembles the report.  Config problems
// throw ConfigError; a pipeline that cannot realize its target throws
// ConstructionError or another Error subclass.  Failing checks are not
// exceptions: they land in the report and flip anyFailed.
ScenarioResult runScenario(const ScenarioConfig& config);

std::string renderReportJson(const Json& report);
std::string renderReportText(const Json& report);

}  // namespace clocus

#endif  // CLOCUS_REPORT_HPP
