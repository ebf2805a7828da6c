#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wgan/config.hpp"
#include "wgan/data.hpp"
#include "wgan/gan.hpp"

namespace wgan {

// Command outcome: `results` lines are fully determined by config + seed;
// `meta` (wall clock and the like) is excluded from determinism claims.
struct RunReport {
  std::vector<nlohmann::json> results;
  nlohmann::json meta;

  std::string to_jsonl() const;
  std::string results_digest() const;  // results lines only, for determinism checks
  std::string summary() const;         // human-readable
  void save(const std::string& path) const;
};

std::string resolve_out_dir(const ExperimentConfig& config);

// simulate: write a synthetic dataset CSV.
RunReport run_simulate(const std::string& kind, int n, std::uint64_t seed,
                       const std::string& out_path);

// train: fit generator/critic per config, persist networks + history +
// report under the output directory, evaluate per eval.* keys.
RunReport run_train(const ExperimentConfig& config);

// evaluate: transport estimate plus confidence-interval coverage of a
// stored generator against a dataset (or the synthetic oracle).
RunReport run_evaluate(const ExperimentConfig& config, const std::string& generator_path);

// forecast: per-day conditional intervals over a series file.
RunReport run_forecast(const ExperimentConfig& config, const std::string& generator_path);

}  // namespace wgan
