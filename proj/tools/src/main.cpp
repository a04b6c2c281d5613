#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "wavebreak_cli/commands.hpp"
#include "wavebreak_cli/config.hpp"

using namespace wavebreak::cli;

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral wave-breaking toolkit"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  int workers = 1;
  std::string seed_profile;
  std::vector<std::string> overrides;
  bool print_config = false;

  app.add_option("command", command, "simulate | check | certify | kernel | breaking-time | characteristics | "
                                     "blowup-functional | compare-kdv | sweep")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (default: output.directory)");
  app.add_option("--workers", workers, "parallel runs in a sweep")->check(CLI::PositiveNumber);
  app.add_option("--seed-profile", seed_profile, "initial profile family, overriding initial.profile");
  app.add_option("--override", overrides, "section.key=value, applied after the file")->allow_extra_args(false);
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  if (!seed_profile.empty()) overrides.push_back("initial.profile=\"" + seed_profile + "\"");
  RunConfig config;
  try {
    config = config_path.empty() ? parse_config("", overrides) : load_config(config_path, overrides);
  } catch (const ParseError& e) {
    std::cerr << (config_path.empty() ? "override" : config_path) << ": " << e.what() << "\n";
    return exit_usage;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }
  if (print_config) {
    std::cout << serialize(config);
    return exit_ok;
  }
  const std::string out = out_dir.empty() ? config.output.directory : out_dir;
  const CommandOutcome o = dispatch(command, config, out, workers, std::cerr);
  std::cout << command << ": exit " << o.exit_code << (o.message.empty() ? "" : " (" + o.message + ")")
            << ", output in " << out << "\n";
  return o.exit_code;
}
