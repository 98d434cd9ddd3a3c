#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wgqed/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int run_command(const std::string& scenario_file, const std::string& preset,
                const std::string& out_dir, std::uint64_t seed, int threads) {
  nlohmann::json config;
  try {
    if (!preset.empty()) config = wgqed::preset_config(preset);
    if (!scenario_file.empty()) {
      std::ifstream is(scenario_file);
      if (!is) {
        std::cerr << "error: cannot open scenario file '" << scenario_file
                  << "'\n";
        return kExitConfig;
      }
      nlohmann::json user = nlohmann::json::parse(is);
      config = preset.empty() ? user : wgqed::merge_config(config, user);
    }
    if (config.is_null()) {
      std::cerr << "error: provide a scenario file or --preset\n";
      return kExitConfig;
    }

    wgqed::Scenario scenario = wgqed::parse_scenario(config);
    wgqed::RunOptions options;
    options.out_dir = out_dir;
    options.seed = seed;
    options.threads = threads;
    wgqed::RunSummary result = wgqed::run(scenario, options);
    std::cout << result.summary.dump(2) << '\n';
    if (!result.errors.empty()) {
      std::cerr << "error: " << result.errors.size()
                << " computation failure(s); see summary errors\n";
      return kExitNumerical;
    }
    return 0;
  } catch (const wgqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waveguide QED simulator for qubit pairs on an open "
               "transmission line"};
  app.require_subcommand(1);

  std::string scenario_file, preset, out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;

  CLI::App* run = app.add_subcommand("run", "Execute a scenario");
  run->add_option("scenario", scenario_file,
                  "Scenario JSON file (optional with --preset)");
  run->add_option("--preset", preset,
                  "Embedded preset name; scenario file overrides fields");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "Override the scenario seed (nonzero)");
  run->add_option("--threads", threads, "Worker threads for sweeps");

  CLI::App* presets =
      app.add_subcommand("presets", "List embedded preset names");

  CLI11_PARSE(app, argc, argv);

  if (presets->parsed()) {
    for (const auto& name : wgqed::preset_names()) std::cout << name << '\n';
    return 0;
  }
  return run_command(scenario_file, preset, out_dir, seed, threads);
}
