#include "wgan/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wgan/errors.hpp"

namespace wgan {

const std::vector<ExperimentConfig::KeyDoc>& ExperimentConfig::registry() {
  static const std::vector<KeyDoc> keys = {
      {"seed", "1", "root seed; all randomness derives from named substreams"},
      {"out.dir", "", "output directory; falls back to $WGANCAST_REPORT_DIR, then ."},
      {"run.repeats", "1", "number of independent repetitions of the run"},

      {"data.source", "synth-uncond",
       "synth-uncond | synth-cond | csv | series (lag-embedded series file)"},
      {"data.path", "", "input file for csv/series sources"},
      {"data.n", "3200", "sample count for synthetic sources"},
      {"data.columns", "", "optional comma-separated series columns to keep"},
      {"data.r", "1", "series: number of lags in the conditioning window"},
      {"data.statistic", "component:0", "series: forecast target, sum or component:<k>"},
      {"data.train_rows", "0", "series: rows used for fitting/training; 0 = all"},
      {"data.normalize", "true", "series: min-max normalize columns on the train range"},

      {"train.lr", "0.0001", "Adam learning rate"},
      {"train.lambda", "0.1", "gradient penalty weight"},
      {"train.batch", "64", "batch size"},
      {"train.n_critic", "5", "critic iterations per generator iteration"},
      {"train.beta1", "0.5", "Adam beta1"},
      {"train.beta2", "0.9", "Adam beta2"},
      {"train.adam_eps", "1e-8", "Adam epsilon"},
      {"train.weight_decay", "0.01", "L2 weight decay added to gradients"},
      {"train.decay_biases", "true", "apply weight decay to biases as well"},
      {"train.epochs", "700", "training epochs (full passes over the data)"},
      {"train.warmup_initial", "25", "generator iterations trained on the long critic schedule"},
      {"train.warmup_every", "100", "afterwards every k-th iteration uses it; 0 = never"},
      {"train.warmup_critic_iters", "100", "critic iterations on the long schedule"},
      {"train.latent", "uniform", "latent distribution: uniform | normal"},
      {"train.latent_dim", "3", "latent dimension"},
      {"train.conditional", "auto", "auto | true | false"},

      {"arch.gen.widths", "32,32,32", "generator hidden-layer widths"},
      {"arch.critic.widths", "128,128,128,128,128", "critic hidden-layer widths"},
      {"arch.gen.bound", "0", "generator output clamp bound; 0 = off"},
      {"arch.critic.bound", "0", "critic output clamp bound; 0 = off"},

      {"eval.alpha", "0.05", "confidence level alpha"},
      {"eval.statistic", "sum", "statistic for confidence intervals"},
      {"eval.N", "1000", "generated samples per interval"},
      {"eval.N_train", "1000", "forecast: samples per interval on training days"},
      {"eval.N_test", "10000", "forecast: samples per interval on test days"},
      {"eval.ot_batch", "1000", "points per transport evaluation batch"},
      {"eval.ot_reps", "10", "transport evaluation repetitions"},
      {"eval.y", "", "optional fixed conditioning point, comma separated"},
  };
  return keys;
}

namespace {

const std::string* find_default(const std::string& key) {
  for (const auto& doc : ExperimentConfig::registry())
    if (doc.key == key) return &doc.default_value;
  return nullptr;
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
  for (const auto& doc : registry()) values_[doc.key] = doc.default_value;
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig config;
  std::stringstream ss(text);
  std::string line;
  long line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + " is not key=value: " + line);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_text(text);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (!find_default(key)) throw ConfigError("unknown config key '" + key + "'");
  values_[key] = value;
}

void ExperimentConfig::apply_override(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must be key=value, got '" + assignment + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

const std::string& ExperimentConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

bool ExperimentConfig::is_default(const std::string& key) const {
  const std::string* def = find_default(key);
  if (!def) throw ConfigError("unknown config key '" + key + "'");
  return get(key) == *def;
}

long ExperimentConfig::get_int(const std::string& key) const {
  const std::string& text = get(key);
  long v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError("config key " + key + " expects an integer, got '" + text + "'");
  return v;
}

double ExperimentConfig::get_real(const std::string& key) const {
  const std::string& text = get(key);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError("config key " + key + " expects a number, got '" + text + "'");
  return v;
}

bool ExperimentConfig::get_bool(const std::string& key) const {
  const std::string& text = get(key);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("config key " + key + " expects true/false, got '" + text + "'");
}

std::uint64_t ExperimentConfig::get_seed() const {
  return static_cast<std::uint64_t>(get_int("seed"));
}

std::vector<std::string> ExperimentConfig::get_name_list(const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<int> ExperimentConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : get_name_list(key)) {
    int v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
      throw ConfigError("config key " + key + " expects integers, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : get_name_list(key)) {
    double v = 0.0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
      throw ConfigError("config key " + key + " expects numbers, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string ExperimentConfig::serialize() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key;
    out += "=";
    out += value;
    out += "\n";
  }
  return out;
}

void ExperimentConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << serialize();
}

}  // namespace wgan
