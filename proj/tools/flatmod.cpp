#include <iostream>

#include <CLI11.hpp>

#include "flatmod/cli_frontend.hpp"

int main(int argc, char** argv) {
  using flatmod::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Commutator varieties, property P and moduli dimensions for matrix groups"};
  app.add_option("command", cfg.command, "Subcommand to run")
      ->required()
      ->check(CLI::IsMember(flatmod::cli::command_names()));
  app.add_option("--input", cfg.input_path, "JSON input file");
  app.add_option("--json", cfg.inline_json, "Inline JSON input");
  app.add_option("--seed", cfg.seed, "Root seed for sampling")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trials per statistical suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol-rank", cfg.tol_rank, "Relative singular-value cutoff");
  app.add_option("--tol-match", cfg.tol_match, "Residual bound for matches");
  app.add_option("--tol-unit", cfg.tol_unit, "Absolute |z - 1| cutoff");
  app.add_option("--output", cfg.output_path, "Write the report here instead of stdout");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return flatmod::cli::kExitInputError;
  }
  return flatmod::cli::run(cfg, std::cout);
}
