#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "orelab/commands.hpp"
#include "orelab/errors.hpp"

using namespace orelab;

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments with skew polynomial rings over corner rings"};
  app.require_subcommand(1, 1);

  std::string scenario, out;
  std::optional<int> k;
  CommandArgs args;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print this help message and exit");
    if (name != "reproduce") sub->add_option("--scenario", scenario, "preset name or scenario JSON file")->required();
    sub->add_option("--k", k, "k for the final-example preset");
    sub->add_option("--samples", args.samples, "number of random samples");
    sub->add_option("--seed", args.seed, "random seed");
    sub->add_option("--out", out, "write the JSON report here instead of stdout");
    if (name == "classify") sub->add_option("--poly", args.poly, "f in R[X]")->required();
    if (name == "membership") {
      sub->add_option("--h", args.h, "element h")->required();
      sub->add_option("--f", args.f, "generator f")->required();
    }
  }
  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();

  CommandResult res;
  try {
    ScenarioConfig config = command == "reproduce" ? preset("asano") : load_scenario(scenario, k);
    res = run_command(config, command, args);
  } catch (const ParseError& e) {
    std::cerr << "error: parse error at position " << e.position() << ": " << e.what() << "\n";
    return kExitError;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPropertyFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  std::string text = res.report.dump(2);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out);
    if (!f || !(f << text << "\n")) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitError;
    }
  }
  std::cerr << res.summary;
  return res.exit_code;
}
