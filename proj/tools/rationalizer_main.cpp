// Command-line front end: scenario solving, validation checks, distances and
// perturbation generators over scenario files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rationalizer/scenario.hpp"

namespace {

using namespace rationalizer;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out.good()) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

int effective_threads(int cli_threads) {
  if (const char* env = std::getenv("RATIONALIZER_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return cli_threads;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver toolkit for dynamic games with subjective payoff structures"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, concept_name, kind, as_name;
  std::vector<std::string> params, structures, models;
  std::string richness_name, hierarchy_name;
  int threads = 1, max_rounds = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    cmd->add_option("--threads", threads, "worker threads (RATIONALIZER_THREADS overrides)");
    cmd->add_option("--out", out_path, "write the report to a file");
  };

  auto* solve_cmd = app.add_subcommand("solve", "run the scenario's commands");
  add_common(solve_cmd);
  solve_cmd->add_option("--concept", concept_name, "override the concept of solve commands")
      ->check(CLI::IsMember({"efr", "br", "sefr", "icr"}));
  solve_cmd->add_option("--max-rounds", max_rounds, "round budget for the solvers");

  auto* check_cmd = app.add_subcommand("check", "validators and richness checks");
  add_common(check_cmd);
  check_cmd->add_option("--richness", richness_name, "structure to check for richness");
  check_cmd->add_option("--hierarchy", hierarchy_name, "hierarchy to validate");

  auto* dist_cmd = app.add_subcommand("distance", "canonical or model distances");
  add_common(dist_cmd);
  dist_cmd->add_option("--structures", structures, "two structure names")->expected(0, 2);
  dist_cmd->add_option("--models", models, "two model names")->expected(0, 2);

  auto* pert_cmd = app.add_subcommand("perturb", "apply a generator and emit the scenario");
  add_common(pert_cmd);
  pert_cmd->add_option("--kind", kind, "generator kind")->required();
  pert_cmd->add_option("--as", as_name, "name for the produced artifact")->required();
  pert_cmd->add_option("--param", params, "generator parameters key=value");

  CLI11_PARSE(app, argc, argv);

  try {
    Scenario sc = parse_scenario(slurp(scenario_path));
    RunOptions opts;
    opts.threads = effective_threads(threads);
    opts.max_rounds = max_rounds;
    opts.concept_filter = concept_name;

    if (solve_cmd->parsed()) {
      auto res = run_scenario(sc, opts);
      emit(res.report, out_path);
      return res.exit_code;
    }
    if (check_cmd->parsed()) {
      sc.commands.clear();
      if (!richness_name.empty())
        sc.commands.push_back({"check", "{\"richness\":\"" + richness_name + "\"}"});
      if (!hierarchy_name.empty())
        sc.commands.push_back({"check", "{\"hierarchy\":\"" + hierarchy_name + "\"}"});
      auto res = run_scenario(sc, opts);
      emit(res.report, out_path);
      return res.exit_code;
    }
    if (dist_cmd->parsed()) {
      sc.commands.clear();
      if (structures.size() == 2)
        sc.commands.push_back(
            {"distance", "{\"structures\":[\"" + structures[0] + "\",\"" + structures[1] + "\"]}"});
      if (models.size() == 2)
        sc.commands.push_back(
            {"distance", "{\"models\":[\"" + models[0] + "\",\"" + models[1] + "\"]}"});
      auto res = run_scenario(sc, opts);
      emit(res.report, out_path);
      return res.exit_code;
    }
    if (pert_cmd->parsed()) {
      std::ostringstream payload;
      payload << "{\"kind\":\"" << kind << "\",\"as\":\"" << as_name << "\"";
      for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--param expects key=value");
        std::string key = p.substr(0, eq), value = p.substr(eq + 1);
        bool numeric =
            !value.empty() && value.find_first_not_of("0123456789-") == std::string::npos;
        payload << ",\"" << key << "\":" << (numeric ? value : "\"" + value + "\"");
      }
      payload << "}";
      sc.commands.clear();
      sc.commands.push_back({"perturb", payload.str()});
      auto res = run_scenario(sc, opts);
      std::cerr << res.report;
      emit(serialize_scenario(sc), out_path);
      return res.exit_code;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "error [" << e.code << "]";
    if (e.line >= 0) std::cerr << " at line " << e.line << ", column " << e.column;
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
