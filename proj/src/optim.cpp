#include "wgan/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace wgan {

AdamState::AdamState(const AdamConfig& config, const std::vector<Eigen::MatrixXd>& params)
    : config_(config) {
  first_moment_.reserve(params.size());
  second_moment_.reserve(params.size());
  for (const auto& p : params) {
    first_moment_.push_back(Eigen::MatrixXd::Zero(p.rows(), p.cols()));
    second_moment_.push_back(Eigen::MatrixXd::Zero(p.rows(), p.cols()));
  }
}

void AdamState::step(std::vector<Eigen::MatrixXd*> params,
                     const std::vector<Eigen::MatrixXd>& grads, double decay,
                     const std::vector<char>* decay_enabled) {
  if (params.size() != first_moment_.size() || grads.size() != first_moment_.size())
    throw std::invalid_argument("adam step: parameter/gradient count mismatch");
  if (decay < 0.0) throw std::invalid_argument("adam step: negative weight decay");

  ++t_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));

  for (std::size_t i = 0; i < params.size(); ++i) {
    Eigen::MatrixXd& p = *params[i];
    if (p.rows() != grads[i].rows() || p.cols() != grads[i].cols())
      throw std::invalid_argument("adam step: shape mismatch at tensor " + std::to_string(i));
    const double d = (decay_enabled && !(*decay_enabled)[i]) ? 0.0 : decay;
    Eigen::ArrayXXd g = grads[i].array() + d * p.array();
    auto& m = first_moment_[i];
    auto& u = second_moment_[i];
    m.array() = config_.beta1 * m.array() + (1.0 - config_.beta1) * g;
    u.array() = config_.beta2 * u.array() + (1.0 - config_.beta2) * g.square();
    p.array() -= config_.learning_rate * (m.array() / c1) /
                 ((u.array() / c2).sqrt() + config_.epsilon);
  }
}

}  // namespace wgan
