#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wgan/rng.hpp"

namespace wgan {

// Samples are rows. Y is absent for unconditional data.
struct PairedDataset {
  Eigen::MatrixXd x;
  std::optional<Eigen::MatrixXd> y;
  std::string provenance;

  int size() const { return static_cast<int>(x.rows()); }
  int feature_dim() const { return static_cast<int>(x.cols()); }
  int cond_dim() const { return y ? static_cast<int>(y->cols()) : 0; }
  void validate() const;  // throws DataError
};

struct SeriesFrame {
  std::vector<std::string> timestamps;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;  // rows = time steps

  int size() const { return static_cast<int>(values.rows()); }
  int width() const { return static_cast<int>(values.cols()); }
};

// Per-column min-max map fitted on a training row range: training values
// map into [0, 1]; out-of-range values are mapped affinely, never clipped.
class Normalizer {
 public:
  static Normalizer fit(const Eigen::MatrixXd& values, int first_row, int row_count);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& values) const;
  Eigen::MatrixXd invert(const Eigen::MatrixXd& values) const;
  double apply_column(int column, double value) const;
  double invert_column(int column, double value) const;
  int width() const { return static_cast<int>(min_.size()); }

 private:
  Eigen::VectorXd min_, range_;
};

enum class LatentKind { kUniform01, kStandardNormal };

struct LatentSpec {
  LatentKind kind = LatentKind::kUniform01;
  int dim = 3;
};

LatentKind parse_latent_kind(const std::string& name);  // "uniform" | "normal"
std::string latent_kind_name(LatentKind kind);

// count x dim matrix of i.i.d. draws.
Eigen::MatrixXd sample_latent(const LatentSpec& spec, int count, Rng& rng);

// Synthetic sampler: X = smooth_map(Z) with Z uniform on [0,1]^3, X in R^10.
PairedDataset synth_unconditional(int n, Rng& rng);

// Conditional variant: (Z, Y) uniform on [0,1]^10 (7 latent + 3 conditional),
// X = smooth_map(mixer(Z, Y)) in R^10.
PairedDataset synth_conditional(int n, Rng& rng);

// The deterministic maps behind the synthetic samplers, exposed so
// evaluations can draw fresh ground-truth samples.
Eigen::VectorXd synth_smooth_map(const Eigen::Vector3d& z);
Eigen::Vector3d synth_mixer(const Eigen::VectorXd& z7, const Eigen::Vector3d& y);
Eigen::MatrixXd synth_conditional_x_given_y(const Eigen::Vector3d& y, int n, Rng& rng);

// A scalar statistic of a feature row: "sum" or "component:<k>".
struct Statistic {
  std::string name;
  std::function<double(const Eigen::RowVectorXd&)> fn;
  std::optional<int> component;  // set for "component:<k>"

  double operator()(const Eigen::RowVectorXd& row) const { return fn(row); }
};

Statistic parse_statistic(const std::string& name, int dim);

// Supervised pairs from a series: X_i = statistic(row i), Y_i = rows
// i-1 .. i-lags concatenated. The first `lags` rows are never predicted.
PairedDataset lag_embed(const SeriesFrame& series, int lags, const Statistic& statistic);

// CSV: header row, first column a timestamp (date or index), remaining
// columns numeric. Unparseable cells fail with their row number.
SeriesFrame load_series_csv(const std::string& path);
SeriesFrame select_columns(const SeriesFrame& frame, const std::vector<std::string>& names);

// Dataset files as written by the simulate command: columns x0..x{d-1}
// then optionally y0..y{dy-1}.
void save_dataset_csv(const std::string& path, const PairedDataset& data);
PairedDataset load_dataset_csv(const std::string& path);

}  // namespace wgan
