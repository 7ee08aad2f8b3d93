#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "clocus/errors.hpp"
#include "clocus/report.hpp"
#include "clocus/version.hpp"

namespace {

// 0 all checks pass, 1 some check fails, 2 config problem, 3 the pipeline
// could not realize its setup or target.
constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPipeline = 3;

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty = stdout; overrides the config's output entry
};

void addOutputOptions(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path,
                  "write the report here instead of stdout");
}

int emitReport(const clocus::ScenarioResult& result,
               const clocus::ScenarioConfig& config,
               const OutputOptions& out) {
  const std::string rendered = out.format == "text"
                                   ? clocus::renderReportText(result.report)
                                   : clocus::renderReportJson(result.report);
  std::string path = out.path;
  if (path.empty() && config.outputPath) path = *config.outputPath;
  if (path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw clocus::ConfigError("cannot write report to " + path);
    file << rendered;
  }
  return result.anyFailed ? kExitChecksFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "critical loci of multiview projective reconstruction, computed as "
      "determinantal ideals"};
  app.set_version_flag("--version", clocus::kToolVersion);
  app.require_subcommand(1);

  std::string analyzeConfigPath;
  OutputOptions analyzeOut;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "analyze one critical setup described by a config file");
  analyze->add_option("--config", analyzeConfigPath, "scenario config (JSON)")
      ->required();
  addOutputOptions(analyze, analyzeOut);

  std::uint64_t verifySeed = 7;
  std::uint32_t verifyPrime = 32003;
  OutputOptions verifyOut;
  CLI::App* verify = app.add_subcommand(
      "verify-classification",
      "run the whole classification checklist and report PASS/FAIL per item");
  verify->add_option("--seed", verifySeed, "base seed for sampled setups")
      ->capture_default_str();
  verify->add_option("--field", verifyPrime, "prime modulus for measurements")
      ->capture_default_str();
  addOutputOptions(verify, verifyOut);

  std::string constructKind;
  std::string constructInputPath;
  OutputOptions constructOut;
  CLI::App* construct = app.add_subcommand(
      "construct",
      "realize a classical variety as a critical locus and cross-check it");
  construct
      ->add_option("kind", constructKind,
                   "which construction: scroll, cubic, or four-lines")
      ->required()
      ->check(CLI::IsMember({"scroll", "cubic", "four-lines"}));
  construct->add_option("--input", constructInputPath, "target config (JSON)")
      ->required();
  addOutputOptions(construct, constructOut);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    clocus::ScenarioConfig config;
    const OutputOptions* out = nullptr;
    if (*analyze) {
      config = clocus::loadScenarioConfig(analyzeConfigPath);
      if (config.mode != clocus::ScenarioMode::Analyze)
        throw clocus::ConfigError("analyze expects a config with mode "
                                  "\"analyze\", got \"" +
                                  clocus::scenarioModeName(config.mode) + "\"");
      out = &analyzeOut;
    } else if (*verify) {
      config.mode = clocus::ScenarioMode::VerifyClassification;
      config.field = clocus::FieldSpec::prime(verifyPrime);
      config.seed = verifySeed;
      out = &verifyOut;
    } else {
      config = clocus::loadScenarioConfig(constructInputPath);
      const clocus::ScenarioMode want =
          constructKind == "scroll" ? clocus::ScenarioMode::ConstructScroll
          : constructKind == "cubic"
              ? clocus::ScenarioMode::ConstructCubic
              : clocus::ScenarioMode::ConstructFourLines;
      if (config.mode != want)
        throw clocus::ConfigError(
            "construct " + constructKind + " expects a config with mode \"" +
            clocus::scenarioModeName(want) + "\", got \"" +
            clocus::scenarioModeName(config.mode) + "\"");
      out = &constructOut;
    }
    const clocus::ScenarioResult result = clocus::runScenario(config);
    return emitReport(result, config, *out);
  } catch (const clocus::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
}
