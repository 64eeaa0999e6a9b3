#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "whcontact/cli.hpp"

using namespace whcontact;

int main(int argc, char** argv) {
  CLI::App app{"Adhesive patch contact stress solver"};
  std::string config_path, mode, output;
  bool verbose = false;
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--mode", mode, "solve, sweep or validate (overrides the file)")
      ->check(CLI::IsMember({"solve", "sweep", "validate"}));
  app.add_option("--output", output, "output directory (overrides the file)");
  app.add_flag("--verbose", verbose, "echo derived constants and written files");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::exit_code::config_error;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read " << config_path << "\n";
    return cli::exit_code::config_error;
  }
  std::stringstream text;
  text << in.rdbuf();

  cli::Overrides overrides;
  if (!mode.empty()) overrides.mode = cli::mode_from_string(mode);
  if (!output.empty()) overrides.output_dir = output;

  cli::RunConfig config;
  try {
    config = cli::parse_config(text.str(), overrides);
  } catch (const cli::ConfigError& e) {
    std::cerr << config_path << ": configuration rejected\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
    return cli::exit_code::config_error;
  }
  return cli::run(config, std::cerr, verbose);
}
