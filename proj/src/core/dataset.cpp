#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fgmsc {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::io, "cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double parse_cell(const std::string& cell, int row, int col) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (last[-1] == ' ' || last[-1] == '\t')) --last;
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last || first == last) {
    raise(ErrorKind::parse, "non-numeric cell '" + cell + "' at row " +
                                std::to_string(row + 1) + ", column " +
                                std::to_string(col + 1));
  }
  if (!std::isfinite(value)) {
    raise(ErrorKind::parse, "non-finite value at row " + std::to_string(row + 1) +
                                ", column " + std::to_string(col + 1));
  }
  return value;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty() && current.back() == '\r') current.pop_back();
  if (!current.empty()) lines.push_back(current);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const json& require_field(const json& object, const char* field, const char* where) {
  const auto it = object.find(field);
  if (it == object.end()) {
    raise(ErrorKind::parse, std::string("manifest missing field \"") + field + "\" in " + where);
  }
  return *it;
}

}  // namespace

void MultiViewDataset::validate() const {
  if (views.empty()) raise(ErrorKind::invalid_argument, "dataset has no views");
  const int n = sample_count();
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (int(views[v].cols()) != n) {
      raise(ErrorKind::invalid_argument,
            "view " + std::to_string(v) + " has " + std::to_string(views[v].cols()) +
                " samples, expected " + std::to_string(n));
    }
    if (views[v].rows() < 1) {
      raise(ErrorKind::invalid_argument, "view " + std::to_string(v) + " has no features");
    }
    if (!views[v].allFinite()) {
      raise(ErrorKind::invalid_argument, "view " + std::to_string(v) + " has non-finite entries");
    }
  }
  if (n_clusters < 1) raise(ErrorKind::invalid_argument, "n_clusters must be >= 1");
  if (labels) {
    if (int(labels->size()) != n) {
      raise(ErrorKind::invalid_argument,
            "label count " + std::to_string(labels->size()) + " != sample count " +
                std::to_string(n));
    }
    const std::set<int> distinct(labels->begin(), labels->end());
    if (int(distinct.size()) > n_clusters) {
      raise(ErrorKind::invalid_argument,
            "labels contain " + std::to_string(distinct.size()) +
                " distinct values, more than n_clusters = " + std::to_string(n_clusters));
    }
  }
}

DatasetSpec load_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorKind::parse, "malformed manifest " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) raise(ErrorKind::parse, "manifest root must be a JSON object");

  DatasetSpec spec;
  const json& name = require_field(doc, "name", "root");
  if (!name.is_string()) raise(ErrorKind::parse, "field \"name\" must be a string");
  spec.name = name.get<std::string>();

  const json& clusters = require_field(doc, "n_clusters", "root");
  if (!clusters.is_number_integer()) raise(ErrorKind::parse, "field \"n_clusters\" must be an integer");
  spec.n_clusters = clusters.get<int>();
  if (spec.n_clusters < 1) raise(ErrorKind::parse, "field \"n_clusters\" must be >= 1");

  const json& views = require_field(doc, "views", "root");
  if (!views.is_array()) raise(ErrorKind::parse, "field \"views\" must be an array");
  if (views.empty()) raise(ErrorKind::parse, "views must be non-empty");

  const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
  for (const json& entry : views) {
    if (!entry.is_object()) raise(ErrorKind::parse, "entries of \"views\" must be objects");
    const json& view_path = require_field(entry, "path", "views[]");
    if (!view_path.is_string()) raise(ErrorKind::parse, "field \"views[].path\" must be a string");
    const json& orientation = require_field(entry, "orientation", "views[]");
    if (!orientation.is_string()) raise(ErrorKind::parse, "field \"views[].orientation\" must be a string");
    DatasetSpec::ViewFile file;
    std::filesystem::path p = view_path.get<std::string>();
    file.path = p.is_absolute() ? p : base / p;
    const std::string o = orientation.get<std::string>();
    if (o == "samples_rows") {
      file.orientation = Orientation::samples_rows;
    } else if (o == "features_rows") {
      file.orientation = Orientation::features_rows;
    } else {
      raise(ErrorKind::parse, "field \"views[].orientation\" must be \"samples_rows\" or \"features_rows\", got \"" + o + "\"");
    }
    spec.view_files.push_back(std::move(file));
  }

  if (const auto it = doc.find("labels"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) raise(ErrorKind::parse, "field \"labels\" must be a string or null");
    std::filesystem::path p = it->get<std::string>();
    spec.labels_path = p.is_absolute() ? p : base / p;
  }
  return spec;
}

ViewMatrix load_view_matrix(const std::filesystem::path& path, Orientation orientation) {
  const std::string text = read_file(path);
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) raise(ErrorKind::parse, "empty matrix file: " + path.string());

  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size());
  std::size_t width = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::vector<double> row;
    std::string cell;
    std::stringstream line(lines[r]);
    int c = 0;
    while (std::getline(line, cell, ',')) {
      row.push_back(parse_cell(cell, int(r), c));
      ++c;
    }
    if (r == 0) {
      width = row.size();
      if (width == 0) raise(ErrorKind::parse, "empty first row in " + path.string());
    } else if (row.size() != width) {
      raise(ErrorKind::parse, "ragged row " + std::to_string(r + 1) + " in " + path.string() +
                                  ": expected " + std::to_string(width) + " cells, got " +
                                  std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }

  Matrix as_read(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c) as_read(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];

  if (orientation == Orientation::samples_rows) return as_read.transpose();
  return as_read;
}

void write_view_csv(const std::filesystem::path& path, const ViewMatrix& view,
                    Orientation orientation) {
  const Matrix on_disk =
      orientation == Orientation::samples_rows ? Matrix(view.transpose()) : view;
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::io, "cannot write file: " + path.string());
  for (Eigen::Index r = 0; r < on_disk.rows(); ++r) {
    for (Eigen::Index c = 0; c < on_disk.cols(); ++c) {
      if (c) out << ',';
      out << format_value(on_disk(r, c));
    }
    out << '\n';
  }
  if (!out) raise(ErrorKind::io, "failed writing file: " + path.string());
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  std::vector<int> labels;
  labels.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    int value = 0;
    const char* first = lines[r].data();
    const char* last = first + lines[r].size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc()) {
      raise(ErrorKind::parse, "non-integer label at line " + std::to_string(r + 1) + " in " +
                                  path.string());
    }
    labels.push_back(value);
  }
  if (labels.empty()) raise(ErrorKind::parse, "empty label file: " + path.string());
  return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::io, "cannot write file: " + path.string());
  for (int label : labels) out << label << '\n';
}

MultiViewDataset load_dataset(const DatasetSpec& spec) {
  MultiViewDataset dataset;
  dataset.name = spec.name;
  dataset.n_clusters = spec.n_clusters;
  for (const auto& file : spec.view_files)
    dataset.views.push_back(load_view_matrix(file.path, file.orientation));
  if (spec.labels_path) dataset.labels = load_labels(*spec.labels_path);
  dataset.validate();
  return dataset;
}

ViewMatrix normalize_unit_range(const ViewMatrix& view) {
  if (!view.allFinite()) raise(ErrorKind::invalid_argument, "normalize_unit_range: non-finite input");
  ViewMatrix out(view.rows(), view.cols());
  for (Eigen::Index f = 0; f < view.rows(); ++f) {
    const double lo = view.row(f).minCoeff();
    const double hi = view.row(f).maxCoeff();
    const double range = hi - lo;
    if (range > 0.0) {
      out.row(f) = (view.row(f).array() - lo) / range;
    } else {
      out.row(f).setZero();  // constant feature carries no distance information
    }
  }
  return out;
}

MultiViewDataset generate_blobs(int n_per_cluster, int c, int t,
                                const std::vector<int>& dims, double separation,
                                double noise, std::uint64_t seed) {
  if (n_per_cluster < 1) raise(ErrorKind::invalid_argument, "n_per_cluster must be >= 1");
  if (c < 1) raise(ErrorKind::invalid_argument, "c must be >= 1");
  if (t < 1) raise(ErrorKind::invalid_argument, "t must be >= 1");
  if (int(dims.size()) != t) {
    raise(ErrorKind::invalid_argument, "dims must list one dimension per view (got " +
                                           std::to_string(dims.size()) + " for t = " +
                                           std::to_string(t) + ")");
  }
  if (!(separation > 0.0)) raise(ErrorKind::invalid_argument, "separation must be > 0");
  if (noise < 0.0) raise(ErrorKind::invalid_argument, "noise must be >= 0");

  const int n = n_per_cluster * c;
  MultiViewDataset dataset;
  dataset.name = "blobs";
  dataset.n_clusters = c;
  dataset.labels = std::vector<int>(n);
  for (int i = 0; i < n; ++i) (*dataset.labels)[i] = i / n_per_cluster;

  for (int v = 0; v < t; ++v) {
    const int d = dims[v];
    if (d < 1) raise(ErrorKind::invalid_argument, "view dimensions must be >= 1");
    Rng rng(derive_seed(seed, std::uint64_t(v)));
    // Cluster k centers on axis (k mod d) at distance separation * (1 + k/d),
    // so every pair of centers is at least `separation` apart.
    Matrix centers = Matrix::Zero(d, c);
    for (int k = 0; k < c; ++k) centers(k % d, k) = separation * (1.0 + double(k / d));
    ViewMatrix view(d, n);
    for (int i = 0; i < n; ++i) {
      const int k = (*dataset.labels)[i];
      for (int f = 0; f < d; ++f) view(f, i) = centers(f, k) + noise * rng.normal();
    }
    dataset.views.push_back(std::move(view));
  }
  dataset.validate();
  return dataset;
}

MultiViewDataset generate_toy7() {
  MultiViewDataset dataset;
  dataset.name = "toy7";
  dataset.n_clusters = 2;
  dataset.labels = std::vector<int>{0, 0, 0, 0, 1, 1, 1};

  const auto view = [](std::initializer_list<double> xs, std::initializer_list<double> ys) {
    ViewMatrix m(2, 7);
    int i = 0;
    for (double x : xs) m(0, i++) = x;
    i = 0;
    for (double y : ys) m(1, i++) = y;
    return m;
  };

  // Views 0 and 1: both clusters compact and far apart.
  dataset.views.push_back(view({0.0, 1.0, 0.2, 0.9, 10.0, 10.8, 10.2},
                               {0.0, 0.2, 1.0, 0.9, 0.1, 0.8, 1.1}));
  dataset.views.push_back(view({0.3, 0.9, 0.0, 1.1, 10.4, 10.0, 11.0},
                               {1.0, 0.1, 0.2, 0.8, 0.9, 0.0, 0.6}));
  // View 2: sample 2 drifts to the gap, its nearest neighbours include node 4.
  dataset.views.push_back(view({0.0, 1.0, 8.6, 0.8, 10.0, 10.9, 10.4},
                               {0.1, 0.9, 0.5, 0.3, 0.6, 0.2, 1.0}));
  // View 3: sample 5 drifts toward the first cluster.
  dataset.views.push_back(view({0.2, 1.1, 0.5, 0.9, 10.3, 2.4, 10.8},
                               {0.8, 0.0, 0.4, 1.1, 0.3, 0.7, 0.9}));
  dataset.validate();
  return dataset;
}

std::filesystem::path write_dataset_files(const MultiViewDataset& dataset,
                                          const std::filesystem::path& dir) {
  dataset.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir)) {
    raise(ErrorKind::io, "cannot create directory: " + dir.string());
  }

  json manifest;
  manifest["name"] = dataset.name;
  json views = json::array();
  for (int v = 0; v < dataset.view_count(); ++v) {
    const std::string file = "view_" + std::to_string(v) + ".csv";
    write_view_csv(dir / file, dataset.views[v], Orientation::samples_rows);
    views.push_back({{"path", file}, {"orientation", "samples_rows"}});
  }
  manifest["views"] = views;
  if (dataset.labels) {
    write_labels(dir / "labels.txt", *dataset.labels);
    manifest["labels"] = "labels.txt";
  } else {
    manifest["labels"] = nullptr;
  }
  manifest["n_clusters"] = dataset.n_clusters;

  const std::filesystem::path manifest_path = dir / (dataset.name + ".json");
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) raise(ErrorKind::io, "cannot write file: " + manifest_path.string());
  out << manifest.dump(2) << '\n';
  return manifest_path;
}

}  // namespace fgmsc
