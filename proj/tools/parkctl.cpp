// parkctl: run or validate parking marketplace scenarios.
//
//   parkctl run <scenario.json> [--out events.jsonl] [--offchain trace.jsonl]
//                               [--report report.json]
//   parkctl validate <scenario.json>
//
// Exit codes: 0 ok, 1 validation failure, 2 execution failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "parkchain/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kExecutionFailure = 2;

bool write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  return static_cast<bool>(out);
}

int report_diagnostics(const std::vector<parkchain::sim::Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << "invalid: " << to_string(d) << "\n";
  return kValidationFailure;
}

int validate(const std::string& path) {
  try {
    auto diagnostics = parkchain::sim::validate_scenario_file(path);
    if (!diagnostics.empty()) return report_diagnostics(diagnostics);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  std::cout << path << ": ok\n";
  return kOk;
}

int run(const std::string& path, const std::string& events_path,
        const std::string& offchain_path, const std::string& report_path) {
  parkchain::sim::Scenario scenario;
  try {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot read " << path << "\n";
      return kValidationFailure;
    }
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
      std::cerr << "invalid: file is not valid JSON\n";
      return kValidationFailure;
    }
    auto diagnostics = parkchain::sim::validate_scenario(doc);
    if (!diagnostics.empty()) return report_diagnostics(diagnostics);
    scenario = parkchain::sim::parse_scenario(doc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  parkchain::sim::RunArtifacts artifacts;
  try {
    artifacts = parkchain::sim::run_scenario(scenario);
  } catch (const parkchain::sim::StepFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExecutionFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExecutionFailure;
  }

  bool ok = write_file(events_path, artifacts.events_jsonl) &&
            write_file(offchain_path, artifacts.offchain_jsonl) &&
            write_file(report_path, parkchain::sim::report_to_string(artifacts.report));
  if (!ok) {
    std::cerr << "error: failed to write output files\n";
    return kExecutionFailure;
  }
  std::cout << scenario.steps.size() << " steps, "
            << artifacts.report["events"].get<std::uint64_t>() << " ledger events -> "
            << events_path << ", " << offchain_path << ", " << report_path << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parking marketplace scenario simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string events_path = "events.jsonl";
  std::string offchain_path = "offchain.jsonl";
  std::string report_path = "report.json";

  auto* run_cmd = app.add_subcommand("run", "Execute a scenario and write its artifacts");
  run_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  run_cmd->add_option("--out", events_path, "Ledger event log (JSONL)");
  run_cmd->add_option("--offchain", offchain_path, "Off-chain voucher trace (JSONL)");
  run_cmd->add_option("--report", report_path, "Funds-flow report (JSON)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario without running it");
  validate_cmd->add_option("scenario", scenario_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  if (*run_cmd) return run(scenario_path, events_path, offchain_path, report_path);
  return validate(scenario_path);
}
