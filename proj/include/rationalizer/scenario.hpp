#ifndef RATIONALIZER_SCENARIO_HPP
#define RATIONALIZER_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

#include "rationalizer/perturb.hpp"

namespace rationalizer {

struct ScenarioError : std::runtime_error {
  std::string code;  // syntax | decimals-forbidden | unresolved-reference | validator | schema
  int line = -1;
  int column = -1;
  ScenarioError(std::string code_, const std::string& message, int line_ = -1, int col_ = -1)
      : std::runtime_error(message), code(std::move(code_)), line(line_), column(col_) {}
};

// Commands are kept in parsed-but-uninterpreted form; they are resolved
// against the registries when the scenario runs.
struct ScenarioCommand {
  std::string kind;  // solve | compare | perturb | distance | check
  std::string payload;  // canonical JSON of the command object
};

struct Scenario {
  std::vector<std::string> players;
  ExtensiveForm form;
  std::map<std::string, StandardPayoffStructure> structures;
  std::map<std::string, StructurePtr> hierarchies;
  std::map<std::string, TypeStructurePtr> type_structures;
  std::map<std::string, ModelProfile> models;
  std::vector<ScenarioCommand> commands;
};

// Parses and fully validates a scenario document. Rationals are accepted as
// "p/q" or integer strings (or exact JSON integers); decimals are rejected.
Scenario parse_scenario(const std::string& text);

// Canonical JSON for the scenario's data model (commands included).
std::string serialize_scenario(const Scenario& sc);

struct RunOptions {
  int threads = 1;
  int max_rounds = 0;          // 0: solver default
  std::string concept_filter;  // when set, solve commands use this concept
};

struct RunResult {
  std::string report;  // human tables followed by the machine CSV section
  int exit_code = 0;   // 0 ok, 3 when a solver exceeded its round budget
};

RunResult run_scenario(Scenario& sc, const RunOptions& opts = {});

}  // namespace rationalizer

#endif  // RATIONALIZER_SCENARIO_HPP
