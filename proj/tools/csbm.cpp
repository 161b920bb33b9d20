#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "csbm/errors.hpp"
#include "csbm/run_config.hpp"

namespace {

struct Args {
  std::string config_path;
  csbm::CliOverrides overrides;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("-c,--config", args.config_path, "JSON config file")->required();
  cmd->add_option("--seed", [&args](const CLI::results_t& r) {
    args.overrides.seed = std::stoull(r[0]);
    return true;
  }, "Override sampler and generator seed");
  cmd->add_option("--sweeps", [&args](const CLI::results_t& r) {
    args.overrides.sweeps = std::stoi(r[0]);
    return true;
  }, "Override Gibbs sweep count");
  cmd->add_option("--k", [&args](const CLI::results_t& r) {
    args.overrides.k = std::stoi(r[0]);
    return true;
  }, "Override number of communities");
  cmd->add_option("--out", [&args](const CLI::results_t& r) {
    args.overrides.out = r[0];
    return true;
  }, "Override output directory");
}

int run_command(const std::string& name, const Args& args) {
  csbm::RunConfig cfg = csbm::parse_config_file(args.config_path, args.overrides);
  if (cfg.command != name) {
    throw csbm::config_error("config declares command '" + cfg.command +
                             "' but CLI invoked '" + name + "'");
  }
  csbm::execute(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collapsed Bayesian stochastic block model engine"};
  app.require_subcommand(1);

  Args args;
  const char* names[] = {"generate", "fit", "select-k", "report"};
  const char* descs[] = {
      "Sample a planted-partition network and write edge lists + truth labels",
      "Run collapsed Gibbs chains and write MAP partition, traces, PSM, summaries",
      "Grid search over K by best sampled collapsed log-posterior",
      "Block-posterior summaries and diagnostics at a given partition",
  };
  for (int c = 0; c < 4; ++c) {
    add_common(app.add_subcommand(names[c], descs[c]), args);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const char* name : names) {
      if (app.get_subcommand(name)->parsed()) return run_command(name, args);
    }
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const csbm::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const csbm::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
