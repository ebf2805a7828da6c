#include "wgan/gan.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "wgan/errors.hpp"
#include "wgan/graph.hpp"
#include "wgan/optim.hpp"

namespace wgan {

using ad::Graph;
using ad::NodeId;

void TrainConfig::validate() const {
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (n_critic < 1) throw ConfigError("n_critic must be >= 1");
  if (penalty_weight < 0.0) throw ConfigError("penalty weight must be >= 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (learning_rate <= 0.0) throw ConfigError("learning rate must be > 0");
  if (latent.dim < 1) throw ConfigError("latent dimension must be >= 1");
  if (warmup.initial_iters < 0 || warmup.every < 0)
    throw ConfigError("warmup counters must be >= 0");
  if ((warmup.initial_iters > 0 || warmup.every > 0) && warmup.critic_iters < 1)
    throw ConfigError("warmup critic iterations must be >= 1");
}

namespace {

struct NetLeaves {
  std::vector<NodeId> weights;
  std::vector<NodeId> biases;

  std::vector<NodeId> all() const {
    std::vector<NodeId> ids = weights;
    ids.insert(ids.end(), biases.begin(), biases.end());
    return ids;
  }
};

NetLeaves add_network_leaves(Graph& g, const Network& net) {
  NetLeaves leaves;
  for (int l = 0; l < net.layer_count(); ++l) {
    const Mat& w = net.weight(l);
    leaves.weights.push_back(g.parameter(static_cast<int>(w.rows()), static_cast<int>(w.cols())));
    if (l + 1 < net.layer_count())
      leaves.biases.push_back(g.parameter(static_cast<int>(net.bias(l).size()), 1));
  }
  return leaves;
}

void bind_network(Graph& g, const NetLeaves& leaves, const Network& net) {
  for (std::size_t l = 0; l < leaves.weights.size(); ++l)
    g.set_value(leaves.weights[l], net.weight(static_cast<int>(l)));
  for (std::size_t l = 0; l < leaves.biases.size(); ++l)
    g.set_value(leaves.biases[l], net.bias(static_cast<int>(l)));
}

// Unclamped forward pass of the column batch through the net's parameters.
NodeId forward_nodes(Graph& g, const NetLeaves& leaves, NodeId input) {
  NodeId h = input;
  const std::size_t layers = leaves.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    h = g.matmul(leaves.weights[l], h);
    if (l + 1 < layers) h = g.relu(g.add_colwise(h, leaves.biases[l]));
  }
  return h;
}

// Critic-update graph: loss = -(objective) + penalty, with adjoints for the
// critic parameters appended. Built once, leaves rebound every iteration.
struct CriticStep {
  Graph g;
  NetLeaves critic, gen;
  NodeId real = ad::kNoNode;
  NodeId cond = ad::kNoNode;
  NodeId latent = ad::kNoNode;
  NodeId mix = ad::kNoNode;
  NodeId objective = ad::kNoNode;
  NodeId penalty = ad::kNoNode;
  std::vector<NodeId> grads;

  CriticStep(const Network& critic_net, const Network& gen_net, int data_dim,
             int cond_dim, int latent_dim, int batch, double penalty_weight) {
    critic = add_network_leaves(g, critic_net);
    gen = add_network_leaves(g, gen_net);
    real = g.input(data_dim, batch);
    if (cond_dim > 0) cond = g.input(cond_dim, batch);
    latent = g.input(latent_dim, batch);
    mix = g.input(1, batch);

    auto with_cond = [&](NodeId x) {
      return cond_dim > 0 ? g.concat_rows(x, cond) : x;
    };
    const NodeId gen_out = forward_nodes(g, gen, with_cond(latent));
    const NodeId f_real = forward_nodes(g, critic, with_cond(real));
    const NodeId f_fake = forward_nodes(g, critic, with_cond(gen_out));
    objective = g.sub(g.mean(f_real), g.mean(f_fake));

    // Per-sample interpolation: mix * real + (1 - mix) * fake.
    const NodeId w_real = g.broadcast_rows(mix, data_dim);
    const NodeId w_fake = g.broadcast_rows(g.affine(mix, -1.0, 1.0), data_dim);
    const NodeId mixed = g.add(g.mul(w_real, real), g.mul(w_fake, gen_out));
    const NodeId f_mix_sum = g.sum(forward_nodes(g, critic, with_cond(mixed)));
    const NodeId norms = g.input_gradient_norm(f_mix_sum, mixed, kPenaltySmoothing);
    penalty = g.affine(g.mean(g.square(g.affine(norms, 1.0, -1.0))), penalty_weight, 0.0);

    const NodeId loss = g.add(g.affine(objective, -1.0, 0.0), penalty);
    const auto wrt = critic.all();
    grads = g.backward(loss, wrt);
  }
};

// Generator-update graph: loss = -(1/m) sum f(g(Z[,Y])[,Y]).
struct GeneratorStep {
  Graph g;
  NetLeaves critic, gen;
  NodeId cond = ad::kNoNode;
  NodeId latent = ad::kNoNode;
  NodeId objective = ad::kNoNode;  // the loss being minimized
  std::vector<NodeId> grads;

  GeneratorStep(const Network& critic_net, const Network& gen_net, int cond_dim,
                int latent_dim, int batch) {
    critic = add_network_leaves(g, critic_net);
    gen = add_network_leaves(g, gen_net);
    if (cond_dim > 0) cond = g.input(cond_dim, batch);
    latent = g.input(latent_dim, batch);

    auto with_cond = [&](NodeId x) {
      return cond_dim > 0 ? g.concat_rows(x, cond) : x;
    };
    const NodeId gen_out = forward_nodes(g, gen, with_cond(latent));
    const NodeId f_fake = forward_nodes(g, critic, with_cond(gen_out));
    objective = g.affine(g.mean(f_fake), -1.0, 0.0);
    grads = g.backward(objective, gen.all());
  }
};

// Epoch-wise without-replacement batch stream: shuffles indices, hands out
// disjoint batches, reshuffles when fewer than a full batch remains.
class BatchStream {
 public:
  BatchStream(int n, int batch, Rng& rng) : batch_(batch), rng_(rng), index_(n) {
    std::iota(index_.begin(), index_.end(), 0);
    reshuffle();
  }

  const std::vector<int>& next() {
    if (pos_ + batch_ > static_cast<int>(index_.size())) reshuffle();
    current_.assign(index_.begin() + pos_, index_.begin() + pos_ + batch_);
    pos_ += batch_;
    return current_;
  }

 private:
  void reshuffle() {
    rng_.shuffle(index_);
    pos_ = 0;
  }

  int batch_;
  Rng& rng_;
  std::vector<int> index_;
  std::vector<int> current_;
  int pos_ = 0;
};

Mat rows_to_columns(const Eigen::MatrixXd& data, const std::vector<int>& rows) {
  Mat out(data.cols(), static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.col(static_cast<int>(i)) = data.row(rows[i]).transpose();
  return out;
}

}  // namespace

CriticBatchResult critic_objective(const Network& critic, const Network& generator,
                                   const Eigen::MatrixXd& real_columns,
                                   const std::optional<Eigen::MatrixXd>& cond_columns,
                                   const Eigen::MatrixXd& latent_columns,
                                   const Eigen::VectorXd& mix, double penalty_weight) {
  if (penalty_weight < 0.0) throw std::invalid_argument("penalty weight must be >= 0");
  const int m = static_cast<int>(real_columns.cols());
  if (latent_columns.cols() != m || mix.size() != m ||
      (cond_columns && cond_columns->cols() != m))
    throw std::invalid_argument("batch length mismatch");

  const int cond_dim = cond_columns ? static_cast<int>(cond_columns->rows()) : 0;
  CriticStep step(critic, generator, static_cast<int>(real_columns.rows()), cond_dim,
                  static_cast<int>(latent_columns.rows()), m, penalty_weight);
  bind_network(step.g, step.critic, critic);
  bind_network(step.g, step.gen, generator);
  step.g.set_value(step.real, real_columns);
  if (cond_dim > 0) step.g.set_value(step.cond, *cond_columns);
  step.g.set_value(step.latent, latent_columns);
  step.g.set_value(step.mix, mix.transpose());
  step.g.eval();
  return {step.g.value(step.objective)(0, 0), step.g.value(step.penalty)(0, 0)};
}

TrainedModel train(const TrainConfig& config, const PairedDataset& data,
                   const Architecture& gen_arch, const Architecture& critic_arch) {
  config.validate();
  data.validate();
  gen_arch.validate();
  critic_arch.validate();

  const int n = data.size();
  const int m = config.batch_size;
  const int d = data.feature_dim();
  const int dy = config.conditional ? data.cond_dim() : 0;
  if (config.conditional && !data.y)
    throw DataError("conditional training needs a dataset with conditions");
  if (n < m)
    throw DataError("dataset smaller than a batch (" + std::to_string(n) + " < " +
                    std::to_string(m) + ")");
  if (gen_arch.input_dim() != config.latent.dim + dy)
    throw ConfigError("generator input dimension must be latent dim + condition dim");
  if (gen_arch.output_dim() != d)
    throw ConfigError("generator output dimension must match the data");
  if (critic_arch.input_dim() != d + dy)
    throw ConfigError("critic input dimension must match data (+ condition) dim");
  if (critic_arch.output_dim() != 1) throw ConfigError("critic output dimension must be 1");

  Rng init_rng = Rng::substream(config.seed, "init");
  Rng shuffle_rng = Rng::substream(config.seed, "shuffle");
  Rng latent_rng = Rng::substream(config.seed, "latent");
  Rng mixing_rng = Rng::substream(config.seed, "mixing");

  TrainedModel model;
  model.critic = Network::init(critic_arch, init_rng);
  model.generator = Network::init(gen_arch, init_rng);

  CriticStep critic_step(model.critic, model.generator, d, dy, config.latent.dim, m,
                         config.penalty_weight);
  GeneratorStep gen_step(model.critic, model.generator, dy, config.latent.dim, m);

  const AdamConfig adam{config.learning_rate, config.beta1, config.beta2,
                        config.adam_epsilon};
  auto collect_params = [](Network& net) {
    std::vector<Mat> snapshot;
    for (int l = 0; l < net.layer_count(); ++l) snapshot.push_back(net.weight(l));
    for (int l = 0; l + 1 < net.layer_count(); ++l) snapshot.push_back(net.bias(l));
    return snapshot;
  };
  AdamState critic_adam(adam, collect_params(model.critic));
  AdamState gen_adam(adam, collect_params(model.generator));

  // Weight tensors first, then biases: must match NetLeaves::all() order.
  auto param_ptrs = [](Network& net) {
    std::vector<Mat*> ptrs;
    for (int l = 0; l < net.layer_count(); ++l) ptrs.push_back(&net.mutable_weight(l));
    return ptrs;
  };
  auto decay_mask = [&](const Network& net) {
    std::vector<char> mask;
    for (int l = 0; l < net.layer_count(); ++l) mask.push_back(1);
    for (int l = 0; l + 1 < net.layer_count(); ++l)
      mask.push_back(config.decay_biases ? 1 : 0);
    return mask;
  };
  const std::vector<char> critic_mask = decay_mask(model.critic);
  const std::vector<char> gen_mask = decay_mask(model.generator);

  BatchStream stream(n, m, shuffle_rng);
  const int iters_per_epoch = n / m;
  const long total_iters = static_cast<long>(config.epochs) * iters_per_epoch;
  model.history.reserve(static_cast<std::size_t>(total_iters));

  Mat latent_batch(config.latent.dim, m);
  Mat mix_batch(1, m);
  long latent_draws = 0;

  auto draw_latent = [&]() {
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < config.latent.dim; ++i)
        latent_batch(i, j) = config.latent.kind == LatentKind::kUniform01
                                 ? latent_rng.uniform01()
                                 : latent_rng.normal();
    latent_draws += m;
  };

  // Bias vectors live in the network as VectorXd; Adam needs Mat storage.
  // Keep matrix mirrors and copy back after each step.
  auto adam_update = [&](Network& net, AdamState& state, const std::vector<Mat>& grads,
                         const std::vector<char>& mask) {
    std::vector<Mat> bias_mirror;
    std::vector<Mat*> ptrs = param_ptrs(net);
    for (int l = 0; l + 1 < net.layer_count(); ++l) bias_mirror.push_back(net.bias(l));
    for (auto& b : bias_mirror) ptrs.push_back(&b);
    state.step(ptrs, grads, config.weight_decay, &mask);
    for (int l = 0; l + 1 < net.layer_count(); ++l)
      net.mutable_bias(l) = bias_mirror[static_cast<std::size_t>(l)].col(0);
  };

  for (long t = 1; t <= total_iters; ++t) {
    const bool long_schedule =
        (config.warmup.initial_iters > 0 && t <= config.warmup.initial_iters) ||
        (config.warmup.every > 0 && t % config.warmup.every == 0);
    const int critic_iters = long_schedule ? config.warmup.critic_iters : config.n_critic;

    double last_objective = 0.0;
    double last_penalty = 0.0;
    for (int k = 0; k < critic_iters; ++k) {
      const auto& batch = stream.next();
      bind_network(critic_step.g, critic_step.critic, model.critic);
      bind_network(critic_step.g, critic_step.gen, model.generator);
      critic_step.g.set_value(critic_step.real, rows_to_columns(data.x, batch));
      if (dy > 0) critic_step.g.set_value(critic_step.cond, rows_to_columns(*data.y, batch));
      draw_latent();
      critic_step.g.set_value(critic_step.latent, latent_batch);
      for (int j = 0; j < m; ++j) mix_batch(0, j) = mixing_rng.uniform01();
      critic_step.g.set_value(critic_step.mix, mix_batch);
      critic_step.g.eval();

      last_objective = critic_step.g.value(critic_step.objective)(0, 0);
      last_penalty = critic_step.g.value(critic_step.penalty)(0, 0);
      if (!std::isfinite(last_objective) || !std::isfinite(last_penalty))
        throw NumericError("critic objective diverged at iteration " + std::to_string(t));

      std::vector<Mat> grads;
      grads.reserve(critic_step.grads.size());
      for (NodeId id : critic_step.grads) grads.push_back(critic_step.g.value(id));
      adam_update(model.critic, critic_adam, grads, critic_mask);
    }

    bind_network(gen_step.g, gen_step.critic, model.critic);
    bind_network(gen_step.g, gen_step.gen, model.generator);
    if (dy > 0) {
      const auto& batch = stream.next();
      gen_step.g.set_value(gen_step.cond, rows_to_columns(*data.y, batch));
    }
    draw_latent();
    gen_step.g.set_value(gen_step.latent, latent_batch);
    gen_step.g.eval();

    const double gen_objective = gen_step.g.value(gen_step.objective)(0, 0);
    if (!std::isfinite(gen_objective))
      throw NumericError("generator objective diverged at iteration " + std::to_string(t));

    std::vector<Mat> grads;
    grads.reserve(gen_step.grads.size());
    for (NodeId id : gen_step.grads) grads.push_back(gen_step.g.value(id));
    adam_update(model.generator, gen_adam, grads, gen_mask);

    HistoryRecord rec;
    rec.iteration = t;
    rec.epoch = static_cast<int>((t - 1) / iters_per_epoch) + 1;
    rec.critic_iters = critic_iters;
    rec.critic_objective = last_objective;
    rec.penalty = last_penalty;
    rec.generator_objective = gen_objective;
    rec.latent_draws = latent_draws;
    model.history.push_back(rec);
  }

  return model;
}

Eigen::MatrixXd generate(const Network& generator, const LatentSpec& latent, int count,
                         Rng& rng, const std::optional<Eigen::MatrixXd>& cond) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  Mat z = sample_latent(latent, count, rng);
  Mat input;
  if (cond) {
    if (cond->rows() != count) throw std::invalid_argument("conditioning row count mismatch");
    input.resize(count, z.cols() + cond->cols());
    input << z, *cond;
  } else {
    input = std::move(z);
  }
  return generator.forward_batch(input.transpose()).transpose();
}

void save_history_jsonl(const std::string& path, const std::vector<HistoryRecord>& history) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  for (const auto& r : history) {
    nlohmann::json j;
    j["iteration"] = r.iteration;
    j["epoch"] = r.epoch;
    j["critic_iters"] = r.critic_iters;
    j["critic_objective"] = r.critic_objective;
    j["penalty"] = r.penalty;
    j["generator_objective"] = r.generator_objective;
    j["latent_draws"] = r.latent_draws;
    out << j.dump() << "\n";
  }
}

void save_history_csv(const std::string& path, const std::vector<HistoryRecord>& history) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.precision(17);
  out << "iteration,epoch,critic_iters,critic_objective,penalty,generator_objective,"
         "latent_draws\n";
  for (const auto& r : history)
    out << r.iteration << "," << r.epoch << "," << r.critic_iters << ","
        << r.critic_objective << "," << r.penalty << "," << r.generator_objective << ","
        << r.latent_draws << "\n";
}

}  // namespace wgan
