#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "parkchain/types.hpp"

namespace parkchain::sim {

using Json = nlohmann::json;

inline constexpr int kScenarioVersion = 1;

struct GenesisEntry {
  std::string id;
  std::string role;
  Funds balance;
};

struct Step {
  TimePoint at = 0;
  std::string actor;
  std::string action;
  Json args = Json::object();
  /// Optional alias for the id the step produces; later steps may use the
  /// alias wherever an entity id is expected.
  std::optional<std::string> bind;
};

struct Scenario {
  int version = kScenarioVersion;
  std::uint64_t seed = 0;
  Duration grace = kDefaultGrace;
  std::vector<GenesisEntry> genesis;
  std::vector<Step> steps;
};

struct Diagnostic {
  std::optional<std::size_t> step;
  std::string message;
};

std::string to_string(const Diagnostic& diagnostic);

/// Names of every action a step may carry.
const std::vector<std::string>& known_actions();

/// Schema and referential checks only; an empty result means the document is
/// runnable.
std::vector<Diagnostic> validate_scenario(const Json& document);

/// Throws std::runtime_error when the file cannot be read. Malformed JSON is
/// reported as a diagnostic.
std::vector<Diagnostic> validate_scenario_file(const std::filesystem::path& path);

/// Throws ScenarioInvalid carrying the diagnostics when validation fails.
Scenario parse_scenario(const Json& document);

class ScenarioInvalid : public std::runtime_error {
 public:
  explicit ScenarioInvalid(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Raised when the engine rejects a step; carries the 0-based step index.
class StepFailed : public std::runtime_error {
 public:
  StepFailed(std::size_t step, const std::string& action, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct RunArtifacts {
  std::string events_jsonl;
  std::string offchain_jsonl;
  Json report;
};

/// Deterministic key seed for an actor: the first 8 bytes (big-endian) of
/// SHA-256 over the scenario seed and the actor id.
std::uint64_t actor_seed(std::uint64_t scenario_seed, const std::string& actor_id);

/// Executes every step in order; throws StepFailed on the first rejection.
RunArtifacts run_scenario(const Scenario& scenario);

/// Pretty-printed report with a trailing newline.
std::string report_to_string(const Json& report);

}  // namespace parkchain::sim
