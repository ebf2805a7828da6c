#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wgan/data.hpp"
#include "wgan/network.hpp"

namespace wgan {

// Long critic schedule for the first `initial_iters` generator iterations
// and for every `every`-th one after that (t % every == 0, t counted from 1).
// every == 0 disables the periodic part; initial_iters == 0 the initial part.
struct WarmupSchedule {
  int initial_iters = 25;
  int every = 100;
  int critic_iters = 100;
};

struct TrainConfig {
  double learning_rate = 1e-4;
  double penalty_weight = 0.1;
  int batch_size = 64;
  int n_critic = 5;
  double beta1 = 0.5;
  double beta2 = 0.9;
  double adam_epsilon = 1e-8;
  double weight_decay = 0.01;
  bool decay_biases = true;
  int epochs = 1;
  WarmupSchedule warmup;
  LatentSpec latent;
  std::uint64_t seed = 1;
  bool conditional = false;

  void validate() const;
};

// One record per generator iteration.
struct HistoryRecord {
  long iteration = 0;
  int epoch = 0;
  int critic_iters = 0;
  double critic_objective = 0.0;   // transport estimate term of the last critic step
  double penalty = 0.0;            // weighted penalty of the last critic step
  double generator_objective = 0.0;
  long latent_draws = 0;           // cumulative fresh latent samples consumed
};

struct TrainedModel {
  Network generator;
  Network critic;
  std::vector<HistoryRecord> history;
};

struct CriticBatchResult {
  double objective = 0.0;  // (1/m) sum f(real) - (1/m) sum f(fake)
  double penalty = 0.0;    // lambda * (1/m) sum (|grad f at mix|_2 - 1)^2
};

// Euclidean-norm smoothing inside the penalty, keeping the gradient of the
// penalty finite when the critic gradient vanishes.
inline constexpr double kPenaltySmoothing = 1e-12;

// Evaluates the critic objective and penalty on one batch. Columns of
// real/latent are samples; mix holds one interpolation weight per sample.
// cond, when present, is passed through both critic arguments unmixed.
CriticBatchResult critic_objective(const Network& critic, const Network& generator,
                                   const Eigen::MatrixXd& real_columns,
                                   const std::optional<Eigen::MatrixXd>& cond_columns,
                                   const Eigen::MatrixXd& latent_columns,
                                   const Eigen::VectorXd& mix, double penalty_weight);

// Gradient-penalty training of generator and critic. Deterministic for a
// given config: initialization, shuffling, latent and mixing draws all run
// on named substreams of config.seed.
TrainedModel train(const TrainConfig& config, const PairedDataset& data,
                   const Architecture& gen_arch, const Architecture& critic_arch);

// Samples `count` generator outputs (rows). cond supplies one conditioning
// row per sample in the conditional case.
Eigen::MatrixXd generate(const Network& generator, const LatentSpec& latent, int count,
                         Rng& rng, const std::optional<Eigen::MatrixXd>& cond = std::nullopt);

void save_history_jsonl(const std::string& path, const std::vector<HistoryRecord>& history);
void save_history_csv(const std::string& path, const std::vector<HistoryRecord>& history);

}  // namespace wgan
