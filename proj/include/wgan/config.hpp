#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wgan {

// Flat key=value experiment configuration. Keys are namespaced with dots
// (train.lambda, arch.gen.widths, data.path, eval.N_test); unknown keys are
// rejected. Values are kept as text and converted on access, so
// parse -> serialize -> parse is a fixed point.
class ExperimentConfig {
 public:
  ExperimentConfig();  // all registered keys at their defaults

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);  // ConfigError on unknown key
  void apply_override(const std::string& assignment);          // "key=value"

  const std::string& get(const std::string& key) const;
  bool is_default(const std::string& key) const;

  long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::uint64_t get_seed() const;
  std::vector<int> get_int_list(const std::string& key) const;      // comma separated
  std::vector<double> get_real_list(const std::string& key) const;
  std::vector<std::string> get_name_list(const std::string& key) const;

  std::string serialize() const;  // sorted key=value lines
  void save(const std::string& path) const;

  struct KeyDoc {
    std::string key;
    std::string default_value;
    std::string help;
  };
  static const std::vector<KeyDoc>& registry();

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace wgan
