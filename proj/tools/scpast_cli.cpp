#include "scpast/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Streaming subspace tracking experiments (CPAST / SCPAST)"};
  app.require_subcommand(1);

  scpast::cli::CommandOptions opt;
  std::string input;
  std::string output;
  std::string seeds;
  std::string mode;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Experiment config (key = value file)")->required();
    sub->add_option("--output", output, "Output CSV path (overrides the config)");
    sub->add_option("--seeds", seeds, "Comma-separated seeds (overrides the config)");
    sub->add_option("--mode", mode, "cpast | scpast | both")
        ->check(CLI::IsMember({"cpast", "scpast", "both"}));
    sub->add_flag("--fast", opt.fast, "O(n d^2) projection-approximation multiply for CPAST");
  };

  auto* simulate = app.add_subcommand("simulate", "Write T simulated observations as CSV");
  add_common(simulate);
  auto* track = app.add_subcommand("track", "Run the trackers and write an error trace");
  add_common(track);
  track->add_option("--input", input, "Observation CSV (rows = time); tracks self-drift");
  auto* sweep = app.add_subcommand("sweep", "Aggregate traces across seeds (median, quartiles)");
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return scpast::cli::kConfigInvalid;
  }

  if (!input.empty()) {
    opt.input = input;
  }
  if (!output.empty()) {
    opt.output = output;
  }
  if (!seeds.empty()) {
    opt.seeds = seeds;
  }
  if (!mode.empty()) {
    opt.mode = mode;
  }
  return scpast::cli::run_command(app.get_subcommands().front()->get_name(), opt, std::cerr);
}
