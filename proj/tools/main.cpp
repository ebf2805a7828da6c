#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "wgan/config.hpp"
#include "wgan/errors.hpp"
#include "wgan/runner.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric error.
constexpr int kConfigExit = 2;
constexpr int kDataExit = 3;
constexpr int kNumericExit = 4;

wgan::ExperimentConfig load_config(const std::string& config_path, std::int64_t seed,
                                   const std::string& out_dir,
                                   const std::vector<std::string>& overrides) {
  wgan::ExperimentConfig config = config_path.empty()
                                      ? wgan::ExperimentConfig()
                                      : wgan::ExperimentConfig::from_file(config_path);
  if (seed >= 0) config.set("seed", std::to_string(seed));
  if (!out_dir.empty()) config.set("out.dir", out_dir);
  for (const auto& assignment : overrides) config.apply_override(assignment);
  return config;
}

void print_report(const wgan::RunReport& report) { std::cout << report.summary(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein GAN training, evaluation and forecasting"};
  app.require_subcommand(1);

  std::string config_path, out_dir, model_path, data_path, kind = "unconditional";
  std::int64_t seed = -1;
  int n = 100;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key=value lines)");
    cmd->add_option("--seed", seed, "root seed override");
    cmd->add_option("--out", out_dir, "output directory override");
    cmd->add_option("set", overrides, "config overrides as key=value");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "write a synthetic dataset CSV");
  simulate->add_option("--kind", kind, "unconditional | conditional");
  simulate->add_option("--n", n, "number of samples")->required();
  simulate->add_option("--out", data_path, "output CSV path")->required();
  simulate->add_option("--seed", seed, "seed");

  CLI::App* train = app.add_subcommand("train", "train generator and critic");
  add_common(train);

  CLI::App* evaluate = app.add_subcommand("evaluate", "transport and coverage report");
  evaluate->add_option("--model", model_path, "generator network file")->required();
  add_common(evaluate);

  CLI::App* forecast = app.add_subcommand("forecast", "per-day interval forecasts");
  forecast->add_option("--model", model_path, "generator network file")->required();
  add_common(forecast);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      print_report(wgan::run_simulate(kind, n, seed < 0 ? 1 : static_cast<std::uint64_t>(seed),
                                      data_path));
    } else if (train->parsed()) {
      print_report(wgan::run_train(load_config(config_path, seed, out_dir, overrides)));
    } else if (evaluate->parsed()) {
      print_report(
          wgan::run_evaluate(load_config(config_path, seed, out_dir, overrides), model_path));
    } else if (forecast->parsed()) {
      print_report(
          wgan::run_forecast(load_config(config_path, seed, out_dir, overrides), model_path));
    }
  } catch (const wgan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const wgan::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const wgan::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
