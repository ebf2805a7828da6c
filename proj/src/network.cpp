#include "wgan/network.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace wgan {

Architecture Architecture::mlp(int input_dim, int hidden_layers, int hidden_width,
                               int output_dim) {
  Architecture a;
  a.depth = hidden_layers;
  a.widths.push_back(input_dim);
  for (int i = 0; i < hidden_layers; ++i) a.widths.push_back(hidden_width);
  a.widths.push_back(output_dim);
  a.validate();
  return a;
}

void Architecture::validate() const {
  if (depth < 0) throw std::invalid_argument("architecture depth must be >= 0");
  if (static_cast<int>(widths.size()) != depth + 2)
    throw std::invalid_argument("architecture needs depth + 2 widths");
  for (int w : widths)
    if (w < 1) throw std::invalid_argument("all widths must be >= 1");
  if (output_bound && *output_bound <= 0.0)
    throw std::invalid_argument("output bound must be positive");
}

Network Network::init(const Architecture& arch, Rng& rng) {
  arch.validate();
  Network net;
  net.arch_ = arch;
  const auto& p = arch.widths;
  for (int l = 0; l <= arch.depth; ++l) {
    const int fan_in = p[static_cast<std::size_t>(l)];
    const int fan_out = p[static_cast<std::size_t>(l) + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Mat w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j)
        w(i, j) = limit * (2.0 * rng.uniform01() - 1.0);
    net.weights_.push_back(std::move(w));
    if (l < arch.depth) net.biases_.push_back(Vec::Zero(fan_out));
  }
  return net;
}

Vec Network::forward(const Vec& x) const {
  return forward_batch(x).col(0);
}

Mat Network::forward_batch(const Mat& columns) const {
  if (columns.rows() != arch_.input_dim())
    throw std::invalid_argument("input dimension mismatch: expected " +
                                std::to_string(arch_.input_dim()) + ", got " +
                                std::to_string(columns.rows()));
  Mat h = columns;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Mat z = weights_[l] * h;
    if (l + 1 < weights_.size()) {
      z.colwise() += biases_[l];
      h = z.cwiseMax(0.0);
    } else {
      h = std::move(z);
    }
  }
  if (clamp_ && arch_.output_bound) {
    const double f = *arch_.output_bound;
    h = h.cwiseMin(f).cwiseMax(-f);
  }
  return h;
}

Vec Network::input_gradient(const Vec& x) const {
  if (arch_.output_dim() != 1)
    throw std::invalid_argument("input_gradient requires a scalar-output network");
  if (x.size() != arch_.input_dim())
    throw std::invalid_argument("input dimension mismatch");

  // Forward pass keeping the active-unit masks.
  std::vector<Eigen::Array<bool, Eigen::Dynamic, 1>> active;
  Vec h = x;
  for (std::size_t l = 0; l + 1 < weights_.size(); ++l) {
    Vec z = weights_[l] * h + biases_[l];
    active.push_back(z.array() > 0.0);
    h = z.cwiseMax(0.0);
  }
  // Backward: g starts as the output layer row, masked down the stack.
  Vec g = weights_.back().row(0).transpose();
  for (std::size_t l = weights_.size() - 1; l-- > 0;) {
    g = active[l].select(g.array(), 0.0).matrix();
    g = weights_[l].transpose() * g;
  }
  return g;
}

long Network::sparsity(double threshold) const {
  if (threshold < 0.0) throw std::invalid_argument("threshold must be >= 0");
  long count = 0;
  for (const Mat& w : weights_) count += (w.array().abs() > threshold).count();
  for (const Vec& b : biases_) count += (b.array().abs() > threshold).count();
  return count;
}

long Network::parameter_count() const {
  long count = 0;
  for (const Mat& w : weights_) count += w.size();
  for (const Vec& b : biases_) count += b.size();
  return count;
}

double Network::max_abs_parameter() const {
  double m = 0.0;
  for (const Mat& w : weights_) m = std::max(m, w.array().abs().maxCoeff());
  for (const Vec& b : biases_)
    if (b.size() > 0) m = std::max(m, b.array().abs().maxCoeff());
  return m;
}

void Network::set_clamp_enabled(bool on) {
  if (on && !arch_.output_bound)
    throw std::invalid_argument("cannot clamp without an output bound");
  clamp_ = on;
}

bool Network::operator==(const Network& other) const {
  if (arch_.widths != other.arch_.widths) return false;
  for (std::size_t l = 0; l < weights_.size(); ++l)
    if (weights_[l] != other.weights_[l]) return false;
  for (std::size_t l = 0; l < biases_.size(); ++l)
    if (biases_[l] != other.biases_[l]) return false;
  return true;
}

std::string Network::to_json() const {
  nlohmann::json j;
  j["format"] = "wgancast-network-v1";
  j["depth"] = arch_.depth;
  j["widths"] = arch_.widths;
  if (arch_.output_bound) j["output_bound"] = *arch_.output_bound;
  if (arch_.sparsity_budget) j["sparsity_budget"] = *arch_.sparsity_budget;
  j["clamp"] = clamp_;
  auto& ws = j["weights"] = nlohmann::json::array();
  for (const Mat& w : weights_) {
    std::vector<double> flat(static_cast<std::size_t>(w.size()));
    for (int i = 0; i < w.rows(); ++i)
      for (int k = 0; k < w.cols(); ++k)
        flat[static_cast<std::size_t>(i) * static_cast<std::size_t>(w.cols()) +
             static_cast<std::size_t>(k)] = w(i, k);
    ws.push_back(flat);
  }
  auto& bs = j["biases"] = nlohmann::json::array();
  for (const Vec& b : biases_)
    bs.push_back(std::vector<double>(b.data(), b.data() + b.size()));
  return j.dump();
}

Network Network::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "wgancast-network-v1")
    throw std::runtime_error("unrecognized network file format");
  Architecture arch;
  arch.depth = j.at("depth").get<int>();
  arch.widths = j.at("widths").get<std::vector<int>>();
  if (j.contains("output_bound")) arch.output_bound = j["output_bound"].get<double>();
  if (j.contains("sparsity_budget")) arch.sparsity_budget = j["sparsity_budget"].get<long>();
  arch.validate();

  Network net;
  net.arch_ = arch;
  const auto& p = arch.widths;
  const auto& ws = j.at("weights");
  const auto& bs = j.at("biases");
  if (static_cast<int>(ws.size()) != arch.depth + 1 ||
      static_cast<int>(bs.size()) != arch.depth)
    throw std::runtime_error("network file layer count mismatch");
  for (int l = 0; l <= arch.depth; ++l) {
    const int fan_in = p[static_cast<std::size_t>(l)];
    const int fan_out = p[static_cast<std::size_t>(l) + 1];
    auto flat = ws[static_cast<std::size_t>(l)].get<std::vector<double>>();
    if (static_cast<long>(flat.size()) != static_cast<long>(fan_in) * fan_out)
      throw std::runtime_error("weight matrix size mismatch in layer " + std::to_string(l));
    Mat w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int k = 0; k < fan_in; ++k)
        w(i, k) = flat[static_cast<std::size_t>(i) * static_cast<std::size_t>(fan_in) +
                       static_cast<std::size_t>(k)];
    net.weights_.push_back(std::move(w));
    if (l < arch.depth) {
      auto bias = bs[static_cast<std::size_t>(l)].get<std::vector<double>>();
      if (static_cast<int>(bias.size()) != fan_out)
        throw std::runtime_error("bias size mismatch in layer " + std::to_string(l));
      net.biases_.push_back(Eigen::Map<Vec>(bias.data(), fan_out));
    }
  }
  net.clamp_ = j.value("clamp", false);
  if (net.clamp_ && !arch.output_bound) net.clamp_ = false;
  return net;
}

void Network::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json() << "\n";
}

Network Network::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

}  // namespace wgan
