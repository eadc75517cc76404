#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "eckart_cli/commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

using Command = std::function<eckart::cli::CommandOutput(const eckart::cli::RunConfig&,
                                                         const std::string&)>;

std::string resolve_format(const std::string& flag, const eckart::cli::RunConfig& cfg,
                           const std::string& out) {
  if (!flag.empty()) return flag;
  if (cfg.format) return *cfg.format;
  if (out.size() >= 5 && out.compare(out.size() - 5, 5, ".json") == 0) return "json";
  return "csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of the Eckart potential in D dimensions"};
  app.require_subcommand(1);

  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"energies", {"closed-form energies for every state and scheme", eckart::cli::cmd_energies}},
      {"error-profile", {"centrifugal approximation error on radial grids", eckart::cli::cmd_error_profile}},
      {"compare-oracle", {"closed form against the numerical radial solver", eckart::cli::cmd_compare_oracle}},
      {"degeneracy", {"zero-energy points and level crossings in the range a", eckart::cli::cmd_degeneracy}},
      {"normalize-check", {"normalization and node count of radial functions", eckart::cli::cmd_normalize_check}},
  };

  std::string config_path;
  std::string out_path = "-";
  std::string format;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "INI-like or JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output file, '-' for stdout");
    sub->add_option("--format", format, "csv or json (default: config, then file extension)")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = eckart::cli::load_config(config_path);
    const auto result = commands.at(name).second(cfg, resolve_format(format, cfg, out_path));
    if (out_path == "-") {
      std::cout << result.text;
    } else {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      if (!(out << result.text)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitConfig;
      }
    }
    if (result.numeric_failure) {
      std::cerr << name << ": numeric check failed\n";
      return kExitNumeric;
    }
  } catch (const eckart::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const eckart::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
