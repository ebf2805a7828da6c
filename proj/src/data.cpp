#include "wgan/data.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wgan/errors.hpp"

namespace wgan {

void PairedDataset::validate() const {
  if (x.rows() < 1) throw DataError("dataset is empty");
  if (!x.allFinite()) throw DataError("dataset contains non-finite features");
  if (y) {
    if (y->rows() != x.rows())
      throw DataError("dataset X/Y row counts differ");
    if (!y->allFinite()) throw DataError("dataset contains non-finite conditions");
  }
}

Normalizer Normalizer::fit(const Eigen::MatrixXd& values, int first_row, int row_count) {
  if (row_count < 1 || first_row < 0 || first_row + row_count > values.rows())
    throw DataError("normalizer training range is empty or out of bounds");
  Normalizer n;
  const auto block = values.middleRows(first_row, row_count);
  n.min_ = block.colwise().minCoeff();
  Eigen::VectorXd max = block.colwise().maxCoeff();
  n.range_ = max - n.min_;
  for (int c = 0; c < n.range_.size(); ++c) {
    if (n.range_(c) <= 0.0)
      throw DataError("constant column " + std::to_string(c) +
                      " in normalizer training range");
  }
  return n;
}

Eigen::MatrixXd Normalizer::apply(const Eigen::MatrixXd& values) const {
  if (values.cols() != min_.size()) throw DataError("normalizer width mismatch");
  Eigen::MatrixXd out = values;
  out.rowwise() -= min_.transpose();
  out.array().rowwise() /= range_.transpose().array();
  return out;
}

Eigen::MatrixXd Normalizer::invert(const Eigen::MatrixXd& values) const {
  if (values.cols() != min_.size()) throw DataError("normalizer width mismatch");
  Eigen::MatrixXd out = values;
  out.array().rowwise() *= range_.transpose().array();
  out.rowwise() += min_.transpose();
  return out;
}

double Normalizer::apply_column(int column, double value) const {
  return (value - min_(column)) / range_(column);
}

double Normalizer::invert_column(int column, double value) const {
  return value * range_(column) + min_(column);
}

LatentKind parse_latent_kind(const std::string& name) {
  if (name == "uniform") return LatentKind::kUniform01;
  if (name == "normal") return LatentKind::kStandardNormal;
  throw ConfigError("unsupported latent distribution '" + name +
                    "' (expected uniform or normal)");
}

std::string latent_kind_name(LatentKind kind) {
  return kind == LatentKind::kUniform01 ? "uniform" : "normal";
}

Eigen::MatrixXd sample_latent(const LatentSpec& spec, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("latent sample count must be >= 1");
  if (spec.dim < 1) throw std::invalid_argument("latent dimension must be >= 1");
  Eigen::MatrixXd z(count, spec.dim);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < spec.dim; ++j)
      z(i, j) = spec.kind == LatentKind::kUniform01 ? rng.uniform01() : rng.normal();
  return z;
}

Eigen::VectorXd synth_smooth_map(const Eigen::Vector3d& z) {
  const double z1 = z(0), z2 = z(1), z3 = z(2);
  Eigen::VectorXd x(10);
  x(0) = std::sin(z1);
  x(1) = std::sin(z2);
  x(2) = std::sin(z3);
  x(3) = std::exp(z1);
  x(4) = z2 * z2 + 2.0 * z3 * z3 * z3;
  x(5) = std::cos(2.0 * std::numbers::pi * z1 * z2 * z3);
  x(6) = z1 * z2 * z3;
  x(7) = (z1 + z2 + z3) * (z1 + z2 + z3);
  x(8) = z1 + z2 + z3;
  x(9) = 2.0 * z1 * z1 * z1 * z1 - z2 * z2 * z2;
  return x;
}

Eigen::Vector3d synth_mixer(const Eigen::VectorXd& z7, const Eigen::Vector3d& y) {
  assert(z7.size() == 7);
  Eigen::Vector3d h;
  h(0) = z7(0) + z7(1) * z7(1) + z7(2) * z7(2) * z7(2);
  h(1) = z7(3) * z7(4) + z7(5) * z7(6);
  h(2) = std::sin(y(0)) - y(1) * y(2);
  return h;
}

PairedDataset synth_unconditional(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  PairedDataset data;
  data.provenance = "synthetic-unconditional";
  data.x.resize(n, 10);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d z(rng.uniform01(), rng.uniform01(), rng.uniform01());
    data.x.row(i) = synth_smooth_map(z).transpose();
  }
  return data;
}

PairedDataset synth_conditional(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  PairedDataset data;
  data.provenance = "synthetic-conditional";
  data.x.resize(n, 10);
  data.y.emplace(n, 3);
  Eigen::VectorXd z(7);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 7; ++j) z(j) = rng.uniform01();
    Eigen::Vector3d y(rng.uniform01(), rng.uniform01(), rng.uniform01());
    data.x.row(i) = synth_smooth_map(synth_mixer(z, y)).transpose();
    data.y->row(i) = y.transpose();
  }
  return data;
}

Eigen::MatrixXd synth_conditional_x_given_y(const Eigen::Vector3d& y, int n, Rng& rng) {
  Eigen::MatrixXd x(n, 10);
  Eigen::VectorXd z(7);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 7; ++j) z(j) = rng.uniform01();
    x.row(i) = synth_smooth_map(synth_mixer(z, y)).transpose();
  }
  return x;
}

Statistic parse_statistic(const std::string& name, int dim) {
  Statistic s;
  s.name = name;
  if (name == "sum") {
    s.fn = [](const Eigen::RowVectorXd& row) { return row.sum(); };
    return s;
  }
  constexpr std::string_view prefix = "component:";
  if (name.rfind(prefix, 0) == 0) {
    int k = -1;
    const auto* begin = name.data() + prefix.size();
    const auto* end = name.data() + name.size();
    auto res = std::from_chars(begin, end, k);
    if (res.ec != std::errc{} || res.ptr != end || k < 0 || k >= dim)
      throw ConfigError("bad statistic component index in '" + name + "' for dimension " +
                        std::to_string(dim));
    s.component = k;
    s.fn = [k](const Eigen::RowVectorXd& row) { return row(k); };
    return s;
  }
  throw ConfigError("unknown statistic '" + name + "' (expected sum or component:<k>)");
}

PairedDataset lag_embed(const SeriesFrame& series, int lags, const Statistic& statistic) {
  if (lags < 1) throw DataError("lag count must be >= 1");
  const int n = series.size();
  const int p = series.width();
  if (n <= lags)
    throw DataError("series has " + std::to_string(n) + " rows, need more than " +
                    std::to_string(lags));
  PairedDataset data;
  data.provenance = "lag-embedded";
  const int pairs = n - lags;
  data.x.resize(pairs, 1);
  data.y.emplace(pairs, p * lags);
  for (int i = lags; i < n; ++i) {
    data.x(i - lags, 0) = statistic(series.values.row(i));
    for (int l = 1; l <= lags; ++l)
      data.y->block(i - lags, (l - 1) * p, 1, p) = series.values.row(i - l);
  }
  return data;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc{} && res.ptr == end && std::isfinite(out);
}

}  // namespace

SeriesFrame load_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header row");
  auto header = split_csv_line(line);
  if (header.size() < 2)
    throw DataError(path + ": header must name a timestamp column and at least one value column");

  SeriesFrame frame;
  frame.columns.assign(header.begin() + 1, header.end());
  const std::size_t width = frame.columns.size();

  std::vector<std::vector<double>> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != width + 1)
      throw DataError(path + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(width + 1));
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(cells[c + 1], row[c]))
        throw DataError(path + ": row " + std::to_string(line_no) +
                        ": cannot parse cell '" + cells[c + 1] + "' in column " +
                        frame.columns[c]);
    }
    frame.timestamps.push_back(cells[0]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": no data rows");

  // Strictly increasing timestamps; integer indices compare numerically,
  // anything else (ISO dates) lexicographically.
  auto as_int = [](const std::string& s, long& v) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
  };
  for (std::size_t i = 1; i < frame.timestamps.size(); ++i) {
    long a = 0, b = 0;
    const bool numeric = as_int(frame.timestamps[i - 1], a) && as_int(frame.timestamps[i], b);
    const bool increasing = numeric ? a < b : frame.timestamps[i - 1] < frame.timestamps[i];
    if (!increasing)
      throw DataError(path + ": timestamps not strictly increasing at row " +
                      std::to_string(i + 2));
  }

  frame.values.resize(static_cast<int>(rows.size()), static_cast<int>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c)
      frame.values(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  return frame;
}

SeriesFrame select_columns(const SeriesFrame& frame, const std::vector<std::string>& names) {
  SeriesFrame out;
  out.timestamps = frame.timestamps;
  out.columns = names;
  out.values.resize(frame.values.rows(), static_cast<int>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = std::find(frame.columns.begin(), frame.columns.end(), names[i]);
    if (it == frame.columns.end())
      throw DataError("no column named '" + names[i] + "' in series");
    out.values.col(static_cast<int>(i)) =
        frame.values.col(static_cast<int>(it - frame.columns.begin()));
  }
  return out;
}

void save_dataset_csv(const std::string& path, const PairedDataset& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.precision(17);
  for (int c = 0; c < data.x.cols(); ++c) out << (c ? "," : "") << "x" << c;
  if (data.y)
    for (int c = 0; c < data.y->cols(); ++c) out << ",y" << c;
  out << "\n";
  for (int r = 0; r < data.x.rows(); ++r) {
    for (int c = 0; c < data.x.cols(); ++c) out << (c ? "," : "") << data.x(r, c);
    if (data.y)
      for (int c = 0; c < data.y->cols(); ++c) out << "," << (*data.y)(r, c);
    out << "\n";
  }
  if (!out) throw DataError("write failed for " + path);
}

PairedDataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header row");
  auto header = split_csv_line(line);
  int d = 0, dy = 0;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const bool is_x = header[i].rfind("x", 0) == 0;
    const bool is_y = header[i].rfind("y", 0) == 0;
    if (is_x && dy == 0)
      ++d;
    else if (is_y)
      ++dy;
    else
      throw DataError(path + ": unexpected dataset header column '" + header[i] + "'");
  }
  if (d == 0) throw DataError(path + ": dataset has no feature columns");

  std::vector<std::vector<double>> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != d + dy)
      throw DataError(path + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(d + dy));
    std::vector<double> row(static_cast<std::size_t>(d + dy));
    for (int c = 0; c < d + dy; ++c) {
      if (!parse_double(cells[static_cast<std::size_t>(c)], row[static_cast<std::size_t>(c)]))
        throw DataError(path + ": row " + std::to_string(line_no) +
                        ": cannot parse cell '" + cells[static_cast<std::size_t>(c)] + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": no data rows");

  PairedDataset data;
  data.provenance = "file";
  data.x.resize(static_cast<int>(rows.size()), d);
  if (dy > 0) data.y.emplace(static_cast<int>(rows.size()), dy);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < d; ++c) data.x(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
    for (int c = 0; c < dy; ++c)
      (*data.y)(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(d + c)];
  }
  return data;
}

}  // namespace wgan
