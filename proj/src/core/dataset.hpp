#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace fgmsc {

enum class Orientation { samples_rows, features_rows };

struct MultiViewDataset {
  std::string name;
  std::vector<ViewMatrix> views;            // each d_v x n
  std::optional<std::vector<int>> labels;   // length n, zero-based
  int n_clusters = 0;

  int sample_count() const { return views.empty() ? 0 : int(views.front().cols()); }
  int view_count() const { return int(views.size()); }
  void validate() const;
};

struct DatasetSpec {
  struct ViewFile {
    std::filesystem::path path;
    Orientation orientation = Orientation::samples_rows;
  };
  std::string name;
  std::vector<ViewFile> view_files;
  std::optional<std::filesystem::path> labels_path;
  int n_clusters = 0;
};

// Manifest: UTF-8 JSON object
//   {"name": str, "views": [{"path": str, "orientation": "samples_rows"|"features_rows"}],
//    "labels": str|null, "n_clusters": int}
// Relative paths resolve against the manifest's directory.
DatasetSpec load_manifest(const std::filesystem::path& path);

// Headerless CSV of finite reals, '.' decimal separator, LF or CRLF.
// Returns the canonical d_v x n orientation (samples_rows input is transposed).
ViewMatrix load_view_matrix(const std::filesystem::path& path, Orientation orientation);
void write_view_csv(const std::filesystem::path& path, const ViewMatrix& view,
                    Orientation orientation);

std::vector<int> load_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);

MultiViewDataset load_dataset(const DatasetSpec& spec);

// Per-feature min-max to [0, 1]; constant features become all zeros.
ViewMatrix normalize_unit_range(const ViewMatrix& view);

// t views of isotropic Gaussian clusters around well-separated axis-aligned
// centers; labels attached, deterministic per seed.
MultiViewDataset generate_blobs(int n_per_cluster, int c, int t,
                                const std::vector<int>& dims, double separation,
                                double noise, std::uint64_t seed);

// Fixed 7-sample, 4-view fixture: samples 0-3 form one cluster, 4-6 the
// other. Two views are clean; in view 2 sample 2 sits between the clusters
// and in view 3 sample 5 drifts toward the first cluster, so each of those
// adaptive graphs carries a cross-cluster edge.
MultiViewDataset generate_toy7();

// Writes <name>.json manifest plus view_<v>.csv (samples as rows) and
// labels.txt into dir.
std::filesystem::path write_dataset_files(const MultiViewDataset& dataset,
                                          const std::filesystem::path& dir);

}  // namespace fgmsc
