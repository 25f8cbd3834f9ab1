// Replays a `store` command script, e.g.
//   store-replay fixtures/erp/erp_case_study.store-script --project erp.store.json \
//     --var CATALOG=fixtures/erp/erp_catalog.json
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "store/cli.hpp"
#include "store/error.hpp"
#include "store/script.hpp"

int main(int argc, char** argv) {
  CLI::App app("Replay a store command script", "store-replay");
  std::string script_path, project = "project.store.json";
  std::vector<std::string> vars;
  bool quiet = false;
  app.add_option("script", script_path, "Script file")->required()->check(CLI::ExistingFile);
  app.add_option("--project", project, "Project file the script runs against")->capture_default_str();
  app.add_option("--var", vars, "NAME=VALUE substitution (repeatable)");
  app.add_flag("--quiet", quiet, "Suppress command output");
  CLI11_PARSE(app, argc, argv);

  std::map<std::string, std::string> variables;
  for (const auto& v : vars) {
    const auto eq = v.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--var expects NAME=VALUE, got '" << v << "'\n";
      return 2;
    }
    variables[v.substr(0, eq)] = v.substr(eq + 1);
  }
  std::ifstream in(script_path);
  std::stringstream text;
  text << in.rdbuf();
  try {
    const auto result = store::cli::replay(store::script::parse(text.str(), variables), project);
    if (!quiet) std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
  } catch (const store::Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 1;
  }
}
