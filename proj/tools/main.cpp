#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

struct CommandFlags {
  std::string config;
  std::string trace_csv;
  bool json = false;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help,
                      CommandFlags& flags) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", flags.config, "experiment config (JSON)")
      ->required();
  sub->add_option("--trace-csv", flags.trace_csv, "write traces as CSV here");
  sub->add_flag("--json", flags.json, "print the full JSON report");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = shiftdyn::cli;

  CLI::App app{"shiftdyn: weighted shift dynamics on basis-spanned subspaces"};
  app.require_subcommand(1);
  CommandFlags flags;
  CLI::App* check = add_command(app, "check", "evaluate a criterion", flags);
  CLI::App* simulate =
      add_command(app, "simulate", "run an orbit density experiment", flags);
  CLI::App* construct =
      add_command(app, "construct", "build a weight family bundle", flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalid;
  }

  cli::Options options;
  options.threads = cli::default_threads();

  cli::CommandResult result;
  try {
    const shiftdyn::io::Json config = cli::load_config(flags.config);
    if (check->parsed()) {
      result = cli::run_check(config, options);
    } else if (simulate->parsed()) {
      result = cli::run_simulate(config, options);
    } else if (construct->parsed()) {
      result = cli::run_construct(config, options);
    }
  } catch (const shiftdyn::io::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInvalid;
  }

  if (flags.json) {
    std::cout << result.report.dump(2) << '\n';
  } else {
    std::cout << result.summary << '\n';
  }
  if (result.exit_code == cli::kExitInvalid && !flags.json) {
    std::cerr << result.report.value("error", "") << '\n';
  }
  if (!flags.trace_csv.empty() && !result.csv.empty()) {
    std::ofstream out(flags.trace_csv);
    if (!out) {
      std::cerr << "error: cannot write " << flags.trace_csv << '\n';
      return cli::kExitInvalid;
    }
    out << result.csv;
  }
  return result.exit_code;
}
