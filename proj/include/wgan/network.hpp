#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "wgan/rng.hpp"

namespace wgan {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Feed-forward ReLU architecture: depth = number of hidden layers, widths
// has depth + 2 entries (input dim first, output dim last). output_bound
// optionally clamps outputs to [-F, F]; sparsity_budget is a reporting
// target only, never enforced.
struct Architecture {
  int depth = 0;
  std::vector<int> widths;
  std::optional<double> output_bound;
  std::optional<long> sparsity_budget;

  Architecture() = default;
  Architecture(int depth_, std::vector<int> widths_,
               std::optional<double> bound = std::nullopt)
      : depth(depth_), widths(std::move(widths_)), output_bound(bound) {}

  // Hidden layers of equal width; widths = (in, hidden ... hidden, out).
  static Architecture mlp(int input_dim, int hidden_layers, int hidden_width,
                          int output_dim);

  void validate() const;  // throws std::invalid_argument
  int input_dim() const { return widths.front(); }
  int output_dim() const { return widths.back(); }
};

// A ReLU network h(x) = W_L a_L, a_l = relu(W_{l-1} a_{l-1} + b_l), a_0 = x.
// Immutable value semantics: training code mutates its own copies through
// mutable_weight()/mutable_bias(); everyone else treats networks as frozen.
class Network {
 public:
  Network() = default;

  // Weights uniform on +-sqrt(6 / (fan_in + fan_out)), biases zero.
  // Deterministic for a given rng state.
  static Network init(const Architecture& arch, Rng& rng);

  const Architecture& arch() const { return arch_; }

  Vec forward(const Vec& x) const;
  Mat forward_batch(const Mat& columns) const;  // one sample per column

  // Exact gradient of the (unclamped) scalar output w.r.t. x, with the
  // ReLU derivative at 0 taken as 0. Output dimension must be 1.
  Vec input_gradient(const Vec& x) const;

  // Number of parameters with |value| > threshold.
  long sparsity(double threshold) const;
  long parameter_count() const;
  double max_abs_parameter() const;

  // Output clamping to [-F, F]; off by default even when a bound is set.
  bool clamp_enabled() const { return clamp_; }
  void set_clamp_enabled(bool on);

  int layer_count() const { return static_cast<int>(weights_.size()); }
  const Mat& weight(int l) const { return weights_[static_cast<std::size_t>(l)]; }
  const Vec& bias(int l) const { return biases_[static_cast<std::size_t>(l)]; }
  Mat& mutable_weight(int l) { return weights_[static_cast<std::size_t>(l)]; }
  Vec& mutable_bias(int l) { return biases_[static_cast<std::size_t>(l)]; }

  bool operator==(const Network& other) const;

  // Textual container, stable across versions: architecture followed by
  // row-major weight matrices and bias vectors in layer order.
  void save(const std::string& path) const;
  static Network load(const std::string& path);
  std::string to_json() const;
  static Network from_json(const std::string& text);

 private:
  Architecture arch_;
  std::vector<Mat> weights_;  // weight l has shape widths[l+1] x widths[l]
  std::vector<Vec> biases_;   // bias l (l = 0..L-1) belongs to hidden layer l+1
  bool clamp_ = false;
};

}  // namespace wgan
