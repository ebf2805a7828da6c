#include "wgan/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "wgan/confidence.hpp"
#include "wgan/errors.hpp"
#include "wgan/transport.hpp"

namespace wgan {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

json config_echo(const ExperimentConfig& config) {
  json values = json::object();
  std::stringstream ss(config.serialize());
  std::string line;
  while (std::getline(ss, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos) values[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return json{{"kind", "config"}, {"values", values}};
}

LatentSpec latent_from(const ExperimentConfig& config) {
  LatentSpec spec;
  spec.kind = parse_latent_kind(config.get("train.latent"));
  spec.dim = static_cast<int>(config.get_int("train.latent_dim"));
  return spec;
}

TrainConfig train_config_from(const ExperimentConfig& config, bool conditional,
                              std::uint64_t seed) {
  TrainConfig tc;
  tc.learning_rate = config.get_real("train.lr");
  tc.penalty_weight = config.get_real("train.lambda");
  tc.batch_size = static_cast<int>(config.get_int("train.batch"));
  tc.n_critic = static_cast<int>(config.get_int("train.n_critic"));
  tc.beta1 = config.get_real("train.beta1");
  tc.beta2 = config.get_real("train.beta2");
  tc.adam_epsilon = config.get_real("train.adam_eps");
  tc.weight_decay = config.get_real("train.weight_decay");
  tc.decay_biases = config.get_bool("train.decay_biases");
  tc.epochs = static_cast<int>(config.get_int("train.epochs"));
  tc.warmup.initial_iters = static_cast<int>(config.get_int("train.warmup_initial"));
  tc.warmup.every = static_cast<int>(config.get_int("train.warmup_every"));
  tc.warmup.critic_iters = static_cast<int>(config.get_int("train.warmup_critic_iters"));
  tc.latent = latent_from(config);
  tc.seed = seed;
  tc.conditional = conditional;
  return tc;
}

bool resolve_conditional(const ExperimentConfig& config, const PairedDataset& data) {
  const std::string& mode = config.get("train.conditional");
  if (mode == "auto") return data.y.has_value();
  if (mode == "true") return true;
  if (mode == "false") return false;
  throw ConfigError("train.conditional expects auto/true/false, got '" + mode + "'");
}

struct SeriesPipeline {
  SeriesFrame frame;                    // working frame (normalized if requested)
  std::optional<Normalizer> normalizer;
  PairedDataset all_pairs;              // every predictable day
  int lags = 1;
  int train_rows = 0;                   // leading frame rows in the training window
  Statistic statistic;
};

SeriesPipeline build_series_pipeline(const ExperimentConfig& config) {
  const std::string& path = config.get("data.path");
  if (path.empty()) throw ConfigError("data.path is required for series data");
  SeriesPipeline p;
  p.frame = load_series_csv(path);
  const auto keep = config.get_name_list("data.columns");
  if (!keep.empty()) p.frame = select_columns(p.frame, keep);

  p.lags = static_cast<int>(config.get_int("data.r"));
  const long requested_rows = config.get_int("data.train_rows");
  p.train_rows = requested_rows > 0 ? static_cast<int>(requested_rows) : p.frame.size();
  if (p.train_rows > p.frame.size())
    throw DataError("data.train_rows exceeds the series length");

  if (config.get_bool("data.normalize")) {
    p.normalizer = Normalizer::fit(p.frame.values, 0, p.train_rows);
    p.frame.values = p.normalizer->apply(p.frame.values);
  }
  p.statistic = parse_statistic(config.get("data.statistic"), p.frame.width());
  p.all_pairs = lag_embed(p.frame, p.lags, p.statistic);
  return p;
}

// Training view of a series: pairs whose target row lies in the train window.
PairedDataset series_training_pairs(const SeriesPipeline& p) {
  const int train_pairs = p.train_rows - p.lags;
  if (train_pairs < 1) throw DataError("training window shorter than the lag count");
  PairedDataset data;
  data.provenance = "lag-embedded";
  data.x = p.all_pairs.x.topRows(train_pairs);
  data.y = p.all_pairs.y->topRows(train_pairs);
  return data;
}

PairedDataset make_dataset(const ExperimentConfig& config, std::uint64_t seed) {
  const std::string& source = config.get("data.source");
  if (source == "synth-uncond") {
    Rng rng = Rng::substream(seed, "data");
    return synth_unconditional(static_cast<int>(config.get_int("data.n")), rng);
  }
  if (source == "synth-cond") {
    Rng rng = Rng::substream(seed, "data");
    return synth_conditional(static_cast<int>(config.get_int("data.n")), rng);
  }
  if (source == "csv") {
    const std::string& path = config.get("data.path");
    if (path.empty()) throw ConfigError("data.path is required for csv data");
    return load_dataset_csv(path);
  }
  if (source == "series") return series_training_pairs(build_series_pipeline(config));
  throw ConfigError("unknown data.source '" + source + "'");
}

// Fresh ground-truth rows for evaluation; only synthetic sources can supply
// them ("" for anything else).
std::optional<Eigen::MatrixXd> fresh_truth_rows(const ExperimentConfig& config, int count,
                                                Rng& rng) {
  const std::string& source = config.get("data.source");
  if (source == "synth-uncond") return synth_unconditional(count, rng).x;
  if (source == "synth-cond") return synth_conditional(count, rng).x;
  return std::nullopt;
}

json transport_json(const TransportEstimate& est, int repeat) {
  return json{{"kind", "transport"}, {"repeat", repeat},      {"mean", est.mean},
              {"std", est.std},      {"repetitions", est.repetitions},
              {"batch_size", est.batch_size}};
}

json network_diagnostics(const std::string& role, const Network& net) {
  json j{{"kind", "network"},
         {"role", role},
         {"parameters", net.parameter_count()},
         {"nonzero", net.sparsity(0.0)},
         {"max_abs", net.max_abs_parameter()}};
  if (net.arch().sparsity_budget) {
    j["sparsity_budget"] = *net.arch().sparsity_budget;
    j["within_budget"] = net.sparsity(0.0) <= *net.arch().sparsity_budget;
  }
  return j;
}

std::vector<double> statistic_values(const Statistic& stat, const Eigen::MatrixXd& rows) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows.rows()));
  for (int i = 0; i < rows.rows(); ++i) out.push_back(stat(rows.row(i)));
  return out;
}

// Evaluation shared by train and evaluate commands. Writes per-observation
// intervals to intervals_path when non-empty.
std::vector<json> evaluate_generator(const ExperimentConfig& config, const Network& gen,
                                     const PairedDataset& data, std::uint64_t seed,
                                     int repeat, const std::string& intervals_path) {
  std::vector<json> lines;
  const LatentSpec latent = latent_from(config);
  const bool conditional = data.y.has_value() &&
                           gen.arch().input_dim() == latent.dim + data.cond_dim();
  const double alpha = config.get_real("eval.alpha");
  const Statistic stat = parse_statistic(config.get("eval.statistic"), data.feature_dim());
  const int n_interval = static_cast<int>(config.get_int("eval.N"));
  const int ot_batch = static_cast<int>(config.get_int("eval.ot_batch"));
  const int ot_reps = static_cast<int>(config.get_int("eval.ot_reps"));

  // Transport estimate on joint rows (features + conditions when present).
  Rng ot_rng = Rng::substream(seed, "eval-ot");
  auto joint_rows = [&](const Eigen::MatrixXd& x, const Eigen::MatrixXd* y) {
    if (!y) return x;
    Eigen::MatrixXd j(x.rows(), x.cols() + y->cols());
    j << x, *y;
    return j;
  };
  BatchSource real_source = [&](int count, Rng& rng) {
    if (config.get("data.source") == "synth-uncond") {
      return synth_unconditional(count, rng).x;
    }
    if (config.get("data.source") == "synth-cond") {
      auto fresh = synth_conditional(count, rng);
      return joint_rows(fresh.x, &*fresh.y);
    }
    if (count > data.size())
      throw DataError("transport batch larger than the dataset (" +
                      std::to_string(count) + " > " + std::to_string(data.size()) + ")");
    std::vector<int> idx(static_cast<std::size_t>(data.size()));
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    Eigen::MatrixXd joint = joint_rows(data.x, conditional ? &*data.y : nullptr);
    Eigen::MatrixXd out(count, joint.cols());
    for (int i = 0; i < count; ++i) out.row(i) = joint.row(idx[static_cast<std::size_t>(i)]);
    return out;
  };
  BatchSource fake_source = [&](int count, Rng& rng) {
    if (!conditional) return generate(gen, latent, count, rng);
    // Conditional: pair generated features with real conditioning rows.
    Eigen::MatrixXd cond(count, data.cond_dim());
    if (config.get("data.source") == "synth-cond") {
      for (int i = 0; i < count; ++i)
        for (int c = 0; c < 3; ++c) cond(i, c) = rng.uniform01();
    } else {
      std::vector<int> idx(static_cast<std::size_t>(data.size()));
      std::iota(idx.begin(), idx.end(), 0);
      rng.shuffle(idx);
      if (count > data.size()) throw DataError("transport batch larger than the dataset");
      for (int i = 0; i < count; ++i) cond.row(i) = data.y->row(idx[static_cast<std::size_t>(i)]);
    }
    Eigen::MatrixXd x = generate(gen, latent, count, rng, cond);
    Eigen::MatrixXd j(count, x.cols() + cond.cols());
    j << x, cond;
    return j;
  };
  lines.push_back(transport_json(ot_report(real_source, fake_source, ot_batch, ot_reps, ot_rng),
                                 repeat));

  Rng ci_rng = Rng::substream(seed, "eval-ci");
  Rng truth_rng = Rng::substream(seed, "eval-truth");

  const auto fixed_y = config.get_real_list("eval.y");
  if (!conditional) {
    // One interval from generated statistics; truths are fresh oracle rows
    // for synthetic sources, the dataset rows otherwise.
    auto samples = statistic_values(stat, generate(gen, latent, n_interval, ci_rng));
    const Interval interval = quantile_interval(samples, alpha);
    std::vector<double> truths;
    if (auto fresh = fresh_truth_rows(config, n_interval, truth_rng))
      truths = statistic_values(stat, *fresh);
    else
      truths = statistic_values(stat, data.x);
    const CoverageReport cov = coverage(interval, truths);
    lines.push_back(json{{"kind", "coverage"},
                         {"repeat", repeat},
                         {"mode", "unconditional"},
                         {"statistic", stat.name},
                         {"alpha", alpha},
                         {"lower", interval.lower},
                         {"upper", interval.upper},
                         {"total", cov.total},
                         {"covered", cov.covered},
                         {"rate", cov.rate}});
  } else if (!fixed_y.empty()) {
    // Interval at one conditioning point; truths from the conditional oracle.
    if (static_cast<int>(fixed_y.size()) != data.cond_dim())
      throw ConfigError("eval.y dimension does not match the conditioning dimension");
    Eigen::MatrixXd cond(n_interval, data.cond_dim());
    for (int i = 0; i < n_interval; ++i)
      for (int c = 0; c < data.cond_dim(); ++c) cond(i, c) = fixed_y[static_cast<std::size_t>(c)];
    auto samples = statistic_values(stat, generate(gen, latent, n_interval, ci_rng, cond));
    const Interval interval = quantile_interval(samples, alpha);
    if (config.get("data.source") != "synth-cond")
      throw ConfigError("eval.y coverage needs the synthetic conditional source");
    Eigen::Vector3d y(fixed_y[0], fixed_y[1], fixed_y[2]);
    auto truths = statistic_values(
        stat, synth_conditional_x_given_y(y, n_interval, truth_rng));
    const CoverageReport cov = coverage(interval, truths);
    lines.push_back(json{{"kind", "coverage"},
                         {"repeat", repeat},
                         {"mode", "conditional-fixed-y"},
                         {"statistic", stat.name},
                         {"alpha", alpha},
                         {"lower", interval.lower},
                         {"upper", interval.upper},
                         {"total", cov.total},
                         {"covered", cov.covered},
                         {"rate", cov.rate}});
  } else {
    // Per-observation intervals at each dataset conditioning row.
    std::vector<Interval> intervals;
    std::vector<double> truths;
    intervals.reserve(static_cast<std::size_t>(data.size()));
    for (int i = 0; i < data.size(); ++i) {
      Eigen::MatrixXd cond = data.y->row(i).replicate(n_interval, 1);
      auto samples = statistic_values(stat, generate(gen, latent, n_interval, ci_rng, cond));
      intervals.push_back(quantile_interval(samples, alpha));
      truths.push_back(stat(data.x.row(i)));
    }
    const CoverageReport cov = coverage(intervals, truths);
    if (!intervals_path.empty()) {
      std::ofstream out(intervals_path);
      if (!out) throw DataError("cannot open " + intervals_path + " for writing");
      out.precision(17);
      out << "index,lower,upper,truth,covered\n";
      for (std::size_t i = 0; i < intervals.size(); ++i)
        out << i << "," << intervals[i].lower << "," << intervals[i].upper << ","
            << truths[i] << "," << static_cast<int>(cov.flags[i]) << "\n";
    }
    lines.push_back(json{{"kind", "coverage"},
                         {"repeat", repeat},
                         {"mode", "conditional-per-observation"},
                         {"statistic", stat.name},
                         {"alpha", alpha},
                         {"total", cov.total},
                         {"covered", cov.covered},
                         {"rate", cov.rate}});
  }
  return lines;
}

}  // namespace

std::string RunReport::to_jsonl() const {
  std::string out;
  for (const auto& line : results) out += line.dump() + "\n";
  if (!meta.is_null()) out += meta.dump() + "\n";
  return out;
}

std::string RunReport::results_digest() const {
  std::string out;
  for (const auto& line : results) out += line.dump() + "\n";
  return out;
}

std::string RunReport::summary() const {
  std::ostringstream out;
  for (const auto& line : results) {
    const std::string kind = line.value("kind", "");
    if (kind == "transport") {
      out << "transport: mean " << line["mean"].get<double>() << " +- "
          << line["std"].get<double>() << " over " << line["repetitions"].get<int>()
          << " x " << line["batch_size"].get<int>() << " points\n";
    } else if (kind == "coverage") {
      out << "coverage (" << line["mode"].get<std::string>() << ", "
          << line["statistic"].get<std::string>()
          << "): " << 100.0 * line["rate"].get<double>() << "% of "
          << line["total"].get<long>() << "\n";
    } else if (kind == "train") {
      out << "trained " << line["iterations"].get<long>() << " generator iterations ("
          << line["epochs"].get<int>() << " epochs), final objective "
          << line["final_critic_objective"].get<double>() << "\n";
    } else if (kind == "forecast") {
      out << "forecast: train coverage " << 100.0 * line["train_rate"].get<double>()
          << "%, test coverage " << 100.0 * line["test_rate"].get<double>() << "% ("
          << line["days"].get<long>() << " days)\n";
    }
  }
  if (!meta.is_null() && meta.contains("wall_clock_s"))
    out << "wall clock: " << meta["wall_clock_s"].get<double>() << " s\n";
  return out.str();
}

void RunReport::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << to_jsonl();
}

std::string resolve_out_dir(const ExperimentConfig& config) {
  std::string dir = config.get("out.dir");
  if (dir.empty()) {
    if (const char* env = std::getenv("WGANCAST_REPORT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  return dir;
}

RunReport run_simulate(const std::string& kind, int n, std::uint64_t seed,
                       const std::string& out_path) {
  Timer timer;
  Rng rng = Rng::substream(seed, "data");
  PairedDataset data;
  if (kind == "unconditional")
    data = synth_unconditional(n, rng);
  else if (kind == "conditional")
    data = synth_conditional(n, rng);
  else
    throw ConfigError("simulate kind must be unconditional or conditional, got '" + kind + "'");
  save_dataset_csv(out_path, data);

  RunReport report;
  report.results.push_back(json{{"kind", "simulate"},
                                {"dataset_kind", kind},
                                {"n", n},
                                {"seed", seed},
                                {"columns", data.feature_dim() + data.cond_dim()},
                                {"path", out_path}});
  report.meta = json{{"kind", "meta"}, {"command", "simulate"},
                     {"wall_clock_s", timer.seconds()}};
  return report;
}

RunReport run_train(const ExperimentConfig& config) {
  Timer timer;
  const std::string out_dir = resolve_out_dir(config);
  const std::uint64_t seed = config.get_seed();
  const int repeats = static_cast<int>(config.get_int("run.repeats"));
  if (repeats < 1) throw ConfigError("run.repeats must be >= 1");

  RunReport report;
  report.results.push_back(config_echo(config));

  std::vector<double> coverage_rates, ot_means;
  for (int rep = 0; rep < repeats; ++rep) {
    const std::uint64_t rep_seed = seed + static_cast<std::uint64_t>(rep);
    PairedDataset data = make_dataset(config, rep_seed);
    const bool conditional = resolve_conditional(config, data);
    TrainConfig tc = train_config_from(config, conditional, rep_seed);

    const int dy = conditional ? data.cond_dim() : 0;
    const auto gen_widths = config.get_int_list("arch.gen.widths");
    const auto critic_widths = config.get_int_list("arch.critic.widths");
    auto widths_to_arch = [](int in, const std::vector<int>& hidden, int out_dim,
                             double bound) {
      Architecture a;
      a.depth = static_cast<int>(hidden.size());
      a.widths.push_back(in);
      a.widths.insert(a.widths.end(), hidden.begin(), hidden.end());
      a.widths.push_back(out_dim);
      if (bound > 0.0) a.output_bound = bound;
      return a;
    };
    Architecture gen_arch = widths_to_arch(tc.latent.dim + dy, gen_widths,
                                           data.feature_dim(),
                                           config.get_real("arch.gen.bound"));
    Architecture critic_arch = widths_to_arch(data.feature_dim() + dy, critic_widths, 1,
                                              config.get_real("arch.critic.bound"));

    TrainedModel model = train(tc, data, gen_arch, critic_arch);

    const std::string suffix = repeats > 1 ? "_rep" + std::to_string(rep) : "";
    model.generator.save(out_dir + "/gen" + suffix + ".json");
    model.critic.save(out_dir + "/critic" + suffix + ".json");
    save_history_jsonl(out_dir + "/history" + suffix + ".jsonl", model.history);
    save_history_csv(out_dir + "/curves" + suffix + ".csv", model.history);

    const auto& last = model.history.back();
    report.results.push_back(json{{"kind", "train"},
                                  {"repeat", rep},
                                  {"iterations", last.iteration},
                                  {"epochs", last.epoch},
                                  {"final_critic_objective", last.critic_objective},
                                  {"final_penalty", last.penalty},
                                  {"final_generator_objective", last.generator_objective},
                                  {"latent_draws", last.latent_draws}});
    report.results.push_back(network_diagnostics("generator", model.generator));
    report.results.push_back(network_diagnostics("critic", model.critic));

    for (auto& line : evaluate_generator(config, model.generator, data, rep_seed, rep,
                                         out_dir + "/intervals" + suffix + ".csv")) {
      if (line["kind"] == "coverage") coverage_rates.push_back(line["rate"].get<double>());
      if (line["kind"] == "transport") ot_means.push_back(line["mean"].get<double>());
      report.results.push_back(std::move(line));
    }
  }

  if (repeats > 1) {
    auto mean_std = [](const std::vector<double>& v) {
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      return std::pair<double, double>(
          mean, v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0);
    };
    const auto [cov_mean, cov_std] = mean_std(coverage_rates);
    const auto [ot_mean, ot_std] = mean_std(ot_means);
    report.results.push_back(json{{"kind", "aggregate"},
                                  {"repeats", repeats},
                                  {"coverage_mean", cov_mean},
                                  {"coverage_std", cov_std},
                                  {"ot_mean", ot_mean},
                                  {"ot_std", ot_std}});
  }

  config.save(out_dir + "/config.txt");
  report.meta = json{{"kind", "meta"}, {"command", "train"},
                     {"wall_clock_s", timer.seconds()}};
  report.save(out_dir + "/report.jsonl");
  return report;
}

RunReport run_evaluate(const ExperimentConfig& config, const std::string& generator_path) {
  Timer timer;
  const std::string out_dir = resolve_out_dir(config);
  const Network gen = Network::load(generator_path);
  PairedDataset data = make_dataset(config, config.get_seed());

  RunReport report;
  report.results.push_back(config_echo(config));
  for (auto& line : evaluate_generator(config, gen, data, config.get_seed(), 0,
                                       out_dir + "/intervals.csv"))
    report.results.push_back(std::move(line));

  report.meta = json{{"kind", "meta"}, {"command", "evaluate"},
                     {"wall_clock_s", timer.seconds()}};
  report.save(out_dir + "/report.jsonl");
  return report;
}

RunReport run_forecast(const ExperimentConfig& config, const std::string& generator_path) {
  Timer timer;
  const std::string out_dir = resolve_out_dir(config);
  const Network gen = Network::load(generator_path);
  SeriesPipeline p = build_series_pipeline(config);
  const LatentSpec latent = latent_from(config);
  if (gen.arch().input_dim() != latent.dim + p.all_pairs.cond_dim())
    throw DataError("generator input dimension does not match lagged series width");
  if (gen.arch().output_dim() != 1)
    throw DataError("forecast expects a scalar-output generator");

  const double alpha = config.get_real("eval.alpha");
  const int n_train_samples = static_cast<int>(config.get_int("eval.N_train"));
  const int n_test_samples = static_cast<int>(config.get_int("eval.N_test"));
  const bool denormalize = p.normalizer && p.statistic.component.has_value();

  Rng ci_rng = Rng::substream(config.get_seed(), "eval-ci");
  const int days = p.all_pairs.size();
  std::vector<Interval> intervals;
  std::vector<double> truths;
  std::vector<char> is_test;
  intervals.reserve(static_cast<std::size_t>(days));
  for (int i = 0; i < days; ++i) {
    const int target_row = i + p.lags;
    const bool test_day = target_row >= p.train_rows;
    const int n_samples = test_day ? n_test_samples : n_train_samples;
    Eigen::MatrixXd cond = p.all_pairs.y->row(i).replicate(n_samples, 1);
    Eigen::MatrixXd generated = generate(gen, latent, n_samples, ci_rng, cond);
    std::vector<double> samples(generated.data(), generated.data() + generated.rows());
    intervals.push_back(quantile_interval(samples, alpha));
    truths.push_back(p.all_pairs.x(i, 0));
    is_test.push_back(test_day ? 1 : 0);
  }
  const CoverageReport cov = coverage(intervals, truths);

  long train_total = 0, train_covered = 0, test_total = 0, test_covered = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (is_test[i]) {
      ++test_total;
      test_covered += cov.flags[i];
    } else {
      ++train_total;
      train_covered += cov.flags[i];
    }
  }

  const std::string intervals_path = out_dir + "/forecast.csv";
  {
    std::ofstream out(intervals_path);
    if (!out) throw DataError("cannot open " + intervals_path + " for writing");
    out.precision(17);
    out << "timestamp,split,lower,upper,truth,covered,space\n";
    const int k = p.statistic.component.value_or(0);
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const int target_row = static_cast<int>(i) + p.lags;
      double lo = intervals[i].lower, hi = intervals[i].upper, tr = truths[i];
      if (denormalize) {
        lo = p.normalizer->invert_column(k, lo);
        hi = p.normalizer->invert_column(k, hi);
        tr = p.normalizer->invert_column(k, tr);
      }
      out << p.frame.timestamps[static_cast<std::size_t>(target_row)] << ","
          << (is_test[i] ? "test" : "train") << "," << lo << "," << hi << "," << tr << ","
          << static_cast<int>(cov.flags[i]) << "," << (denormalize ? "raw" : "model")
          << "\n";
    }
  }

  RunReport report;
  report.results.push_back(config_echo(config));
  report.results.push_back(
      json{{"kind", "forecast"},
           {"days", static_cast<long>(days)},
           {"alpha", alpha},
           {"statistic", p.statistic.name},
           {"rate", cov.rate},
           {"train_total", train_total},
           {"train_covered", train_covered},
           {"train_rate", train_total ? static_cast<double>(train_covered) / train_total : 0.0},
           {"test_total", test_total},
           {"test_covered", test_covered},
           {"test_rate", test_total ? static_cast<double>(test_covered) / test_total : 0.0}});
  report.meta = json{{"kind", "meta"}, {"command", "forecast"},
                     {"wall_clock_s", timer.seconds()}};
  report.save(out_dir + "/report.jsonl");
  return report;
}

}  // namespace wgan
