#include <CLI11.hpp>
#include <iostream>

#include "app/commands.h"

int main(int argc, char** argv) {
  using namespace chronsti;
  CLI::App cli{"chronsti: dynamic STI vaccination models and cost-effectiveness"};
  cli.require_subcommand(1);

  app::CommandOptions opts;
  std::string engine;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Master RNG seed (overrides config)");
    sub->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--workers", opts.workers, "Maximum worker threads");
    sub->add_option("--engine", engine, "Model engine for cea")->check(CLI::IsMember({"ode", "markov"}));
    sub->add_option("--data", opts.data_dir, "Directory with registry.csv, binomial.csv, calibration.csv");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Generate the synthetic evidence base"},
      {"calibrate-dode", "Frequentist calibration of the deterministic ODE model"},
      {"fit-bode", "Bayesian fit of the ODE model with PSA"},
      {"fit-bmm", "Bayesian fit of the Markov model with PSA"},
      {"cea", "Cost-effectiveness summaries from a PSA table"},
      {"compare", "Run all three models on shared data and compare"},
  };
  for (const auto& [name, help] : commands) add_common(cli.add_subcommand(name, help));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : app::kConfigError;
  }
  opts.command = cli.get_subcommands().front()->get_name();
  if (!engine.empty()) opts.engine = parse_engine(engine);
  return app::run_command(opts, std::cout, std::cerr);
}
