#pragma once

#include <Eigen/Core>

#include <vector>

namespace wgan {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.5;
  double beta2 = 0.9;
  double epsilon = 1e-8;
};

// Adam with classic (coupled) L2 weight decay: the decay term is added to
// the gradient before the moment updates. One state per network, mutated
// only by its owning training loop.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const AdamConfig& config, const std::vector<Eigen::MatrixXd>& params);

  // params and grads must be shape-congruent with the state. decay applies
  // uniformly; pass a per-tensor decay mask via decay_enabled to exempt
  // tensors (e.g. biases) when configured.
  void step(std::vector<Eigen::MatrixXd*> params,
            const std::vector<Eigen::MatrixXd>& grads, double decay,
            const std::vector<char>* decay_enabled = nullptr);

  long step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }

 private:
  AdamConfig config_;
  std::vector<Eigen::MatrixXd> first_moment_;
  std::vector<Eigen::MatrixXd> second_moment_;
  long t_ = 0;
};

}  // namespace wgan
