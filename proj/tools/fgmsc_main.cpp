// fgmsc command line: run experiments, generate synthetic datasets, and
// evaluate label files. Talks to the library exclusively through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fgmsc/fgmsc.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitDiverged = 4;

int exit_code_for(fgmsc_status status) {
  return status == FGMSC_ERROR_NUMERIC ? kExitDiverged : kExitData;
}

[[noreturn]] void fail(fgmsc_status status) {
  std::cerr << "error: " << fgmsc_last_error() << "\n";
  std::exit(exit_code_for(status));
}

struct DatasetHandle {
  fgmsc_dataset* ptr = nullptr;
  ~DatasetHandle() { fgmsc_dataset_free(ptr); }
};

struct ResultHandle {
  fgmsc_result* ptr = nullptr;
  ~ResultHandle() { fgmsc_result_free(ptr); }
};

struct SynthSpec {
  bool is_toy7 = false;
  int n_per_cluster = 0, c = 0, t = 0;
};

// "toy7" or "blobs:<n_per_cluster>x<c>x<t>"
SynthSpec parse_synth_spec(const std::string& spec) {
  SynthSpec out;
  if (spec == "toy7") {
    out.is_toy7 = true;
    return out;
  }
  const std::string prefix = "blobs:";
  if (spec.rfind(prefix, 0) == 0) {
    char sep1 = 0, sep2 = 0;
    std::istringstream in(spec.substr(prefix.size()));
    if (in >> out.n_per_cluster >> sep1 >> out.c >> sep2 >> out.t && sep1 == 'x' && sep2 == 'x' &&
        out.n_per_cluster > 0 && out.c > 0 && out.t > 0 && in.eof()) {
      return out;
    }
  }
  std::cerr << "error: unknown synth spec \"" << spec
            << "\" (expected toy7 or blobs:<n_per_cluster>x<c>x<t>)\n";
  std::exit(kExitUsage);
}

std::vector<int> parse_dims(const std::string& dims_flag, int t) {
  std::vector<int> dims;
  if (dims_flag.empty()) {
    dims.assign(t, 8);
    return dims;
  }
  std::stringstream in(dims_flag);
  std::string item;
  while (std::getline(in, item, ',')) dims.push_back(std::atoi(item.c_str()));
  if (int(dims.size()) != t) {
    std::cerr << "error: --dims must list exactly " << t << " comma-separated dimensions\n";
    std::exit(kExitUsage);
  }
  for (int d : dims) {
    if (d < 1) {
      std::cerr << "error: --dims entries must be >= 1\n";
      std::exit(kExitUsage);
    }
  }
  return dims;
}

std::string quote_if_needed(const std::string& token) {
  if (token.find_first_of(" \t\"") == std::string::npos) return token;
  std::string quoted = "\"";
  for (char ch : token) {
    if (ch == '"') quoted += '\\';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string reassemble_command(int argc, char** argv) {
  std::string command;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) command += ' ';
    command += quote_if_needed(argv[i]);
  }
  return command;
}

DatasetHandle make_synth_dataset(const SynthSpec& spec, const std::string& dims_flag, double sep,
                                 double noise, uint64_t seed) {
  DatasetHandle dataset;
  fgmsc_status status;
  if (spec.is_toy7) {
    status = fgmsc_dataset_toy7(&dataset.ptr);
  } else {
    const std::vector<int> dims = parse_dims(dims_flag, spec.t);
    status = fgmsc_dataset_blobs(spec.n_per_cluster, spec.c, spec.t, dims.data(), sep, noise,
                                 seed, &dataset.ptr);
  }
  if (status != FGMSC_OK) fail(status);
  return dataset;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(kExitData);
  }
  out << text;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path, const fgmsc_result* result) {
  const int rows = fgmsc_result_trace_rows(result);
  std::vector<double> trace(std::size_t(rows) * 6);
  fgmsc_result_trace(result, trace.data());
  std::ostringstream out;
  out << "iter,total,recon,graph_reg,l1,fusion,spectral\n";
  // row 0 is the post-initialization objective; iterations start at 1
  for (int r = 1; r < rows; ++r) {
    out << r;
    for (int c = 0; c < 6; ++c) out << ',' << format_value(trace[std::size_t(r) * 6 + c]);
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_edge_list(const std::filesystem::path& path, const fgmsc_result* result, int n) {
  std::vector<double> graph(std::size_t(n) * n);
  fgmsc_result_graph(result, graph.data());
  std::ostringstream out;
  out << "i,j,w\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double w = graph[std::size_t(j) * n + i];  // column-major
      if (w > 0.0) out << i << ',' << j << ',' << format_value(w) << '\n';
    }
  }
  write_text_file(path, out.str());
}

void write_embedding_csv(const std::filesystem::path& path, const fgmsc_result* result, int n) {
  const int c = fgmsc_result_embedding_cols(result);
  std::vector<double> embedding(std::size_t(n) * c);
  fgmsc_result_embedding(result, embedding.data());
  std::ostringstream out;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < c; ++k) {
      if (k) out << ',';
      out << format_value(embedding[std::size_t(k) * n + i]);
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

std::vector<int> read_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(kExitData);
  }
  std::vector<int> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      labels.push_back(std::stoi(line));
    } catch (const std::exception&) {
      std::cerr << "error: non-integer label in " << path << ": \"" << line << "\"\n";
      std::exit(kExitData);
    }
  }
  if (labels.empty()) {
    std::cerr << "error: empty label file " << path << "\n";
    std::exit(kExitData);
  }
  return labels;
}

const char* variant_to_name(int variant) {
  switch (variant) {
    case FGMSC_VARIANT_FGL_Z: return "fgl-z";
    case FGMSC_VARIANT_FGL_F: return "fgl-f";
    case FGMSC_VARIANT_FGL_ZF: return "fgl-zf";
    case FGMSC_VARIANT_GRAPH_LEVEL: return "graph-level";
    default: return "full";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-view subspace clustering experiments"};
  app.require_subcommand(1);

  // ---- run ----
  auto* cmd_run = app.add_subcommand("run", "run the solver on a dataset");
  std::string manifest_path, synth_spec, variant_flag = "full", dims_flag;
  std::string out_path, trace_path, graph_path, embedding_path;
  double sep = 10.0, noise = 1.0;
  fgmsc_params params;
  fgmsc_params_init(&params);
  cmd_run->add_option("--manifest", manifest_path, "dataset manifest (JSON)");
  cmd_run->add_option("--synth", synth_spec, "built-in dataset: toy7 or blobs:<npc>x<c>x<t>");
  cmd_run->add_option("--dims", dims_flag, "per-view feature dims for blobs, comma separated");
  cmd_run->add_option("--sep", sep, "blob center separation");
  cmd_run->add_option("--noise", noise, "blob noise sigma");
  cmd_run->add_option("--alpha", params.alpha, "self-expression tradeoff");
  cmd_run->add_option("--lambda", params.lambda, "fusion weight");
  cmd_run->add_option("--eta", params.eta, "spectral weight");
  cmd_run->add_option("--m", params.m, "neighbors per unified-graph row");
  cmd_run->add_option("--k-init", params.k_init, "neighbors of the initial adaptive graphs");
  cmd_run->add_option("--iters", params.outer_iters, "outer iterations");
  cmd_run->add_option("--inner-iters", params.inner_iters, "inner W iterations");
  cmd_run->add_option("--tol", params.tol, "early-stop tolerance (0 disables)");
  cmd_run->add_option("--seed", params.seed, "random seed");
  cmd_run->add_option("--restarts", params.restarts, "k-means restarts");
  cmd_run->add_option("--variant", variant_flag, "full | fgl-z | fgl-f | fgl-zf | graph-level");
  cmd_run->add_option("--out", out_path, "results JSON path");
  cmd_run->add_option("--trace", trace_path, "objective trace CSV path");
  cmd_run->add_option("--export-graph", graph_path, "unified graph edge list CSV path");
  cmd_run->add_option("--export-embedding", embedding_path, "spectral embedding CSV path");

  // ---- synth ----
  auto* cmd_synth = app.add_subcommand("synth", "write a synthetic dataset to disk");
  std::string synth_arg, synth_out;
  std::string synth_dims;
  double synth_sep = 10.0, synth_noise = 1.0;
  uint64_t synth_seed = 0;
  cmd_synth->add_option("spec", synth_arg, "toy7 or blobs:<npc>x<c>x<t>")->required();
  cmd_synth->add_option("--out", synth_out, "target directory")->required();
  cmd_synth->add_option("--dims", synth_dims, "per-view feature dims, comma separated");
  cmd_synth->add_option("--sep", synth_sep, "blob center separation");
  cmd_synth->add_option("--noise", synth_noise, "blob noise sigma");
  cmd_synth->add_option("--seed", synth_seed, "random seed");

  // ---- eval ----
  auto* cmd_eval = app.add_subcommand("eval", "compare two label files");
  std::string truth_path, pred_path;
  cmd_eval->add_option("truth", truth_path, "ground-truth labels, one integer per line")
      ->required();
  cmd_eval->add_option("pred", pred_path, "predicted labels, one integer per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage/error
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  if (cmd_run->parsed()) {
    if (manifest_path.empty() == synth_spec.empty()) {
      std::cerr << "error: exactly one of --manifest or --synth is required\n"
                << cmd_run->help();
      return kExitUsage;
    }
    int variant_value = FGMSC_VARIANT_FULL;
    {
      std::string canon = variant_flag;
      for (char& ch : canon)
        if (ch == '_') ch = '-';
      if (canon == "full") variant_value = FGMSC_VARIANT_FULL;
      else if (canon == "fgl-z") variant_value = FGMSC_VARIANT_FGL_Z;
      else if (canon == "fgl-f") variant_value = FGMSC_VARIANT_FGL_F;
      else if (canon == "fgl-zf") variant_value = FGMSC_VARIANT_FGL_ZF;
      else if (canon == "graph-level") variant_value = FGMSC_VARIANT_GRAPH_LEVEL;
      else {
        std::cerr << "error: unknown variant \"" << variant_flag << "\"\n";
        return kExitUsage;
      }
    }
    params.variant = variant_value;

    DatasetHandle dataset;
    if (!manifest_path.empty()) {
      const fgmsc_status status = fgmsc_dataset_load_manifest(manifest_path.c_str(), &dataset.ptr);
      if (status != FGMSC_OK) fail(status);
    } else {
      dataset = make_synth_dataset(parse_synth_spec(synth_spec), dims_flag, sep, noise,
                                   params.seed);
    }

    ResultHandle result;
    const fgmsc_status status = fgmsc_run(dataset.ptr, &params, &result.ptr);
    if (status != FGMSC_OK) fail(status);

    const int n = fgmsc_dataset_samples(dataset.ptr);
    ordered_json doc;
    doc["dataset"] = {{"name", fgmsc_dataset_name(dataset.ptr)},
                      {"samples", n},
                      {"views", fgmsc_dataset_views(dataset.ptr)},
                      {"clusters", fgmsc_dataset_clusters(dataset.ptr)}};
    doc["params"] = {{"alpha", params.alpha},
                     {"lambda", params.lambda},
                     {"eta", params.eta},
                     {"m", params.m},
                     {"k_init", params.k_init},
                     {"outer_iters", params.outer_iters},
                     {"inner_iters", params.inner_iters},
                     {"tol", params.tol},
                     {"seed", params.seed},
                     {"restarts", params.restarts},
                     {"variant", variant_to_name(params.variant)}};
    if (fgmsc_result_has_metrics(result.ptr)) {
      double acc = 0, nmi = 0, ari = 0;
      fgmsc_result_metrics(result.ptr, &acc, &nmi, &ari);
      doc["metrics"] = {{"acc", acc}, {"nmi", nmi}, {"ari", ari}};
    } else {
      doc["metrics"] = nullptr;
    }
    doc["iterations"] = fgmsc_result_iterations(result.ptr);
    doc["final_objective"] = fgmsc_result_final_objective(result.ptr);
    doc["monotonicity_violations"] = fgmsc_result_monotonicity_violations(result.ptr);
    doc["projection_activations"] = fgmsc_result_projection_activations(result.ptr);
    doc["library_version"] = fgmsc_version();
    doc["command"] = reassemble_command(argc, argv);

    // wall time goes to stderr only: results files must be byte-identical
    // across reruns and thread counts
    std::fprintf(stderr, "[fgmsc] completed %d iterations in %.1f ms\n",
                 fgmsc_result_iterations(result.ptr), fgmsc_result_timing_ms(result.ptr));

    const std::string rendered = doc.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      write_text_file(out_path, rendered);
    }
    if (!trace_path.empty()) write_trace_csv(trace_path, result.ptr);
    if (!graph_path.empty()) write_edge_list(graph_path, result.ptr, n);
    if (!embedding_path.empty()) write_embedding_csv(embedding_path, result.ptr, n);
    return 0;
  }

  if (cmd_synth->parsed()) {
    DatasetHandle dataset = make_synth_dataset(parse_synth_spec(synth_arg), synth_dims, synth_sep,
                                               synth_noise, synth_seed);
    char manifest_path_buf[4096] = {0};
    const fgmsc_status status = fgmsc_dataset_write_files(dataset.ptr, synth_out.c_str(),
                                                          manifest_path_buf,
                                                          sizeof(manifest_path_buf));
    if (status != FGMSC_OK) fail(status);
    std::cout << manifest_path_buf << "\n";
    return 0;
  }

  if (cmd_eval->parsed()) {
    const std::vector<int> truth = read_label_file(truth_path);
    const std::vector<int> pred = read_label_file(pred_path);
    if (truth.size() != pred.size()) {
      std::cerr << "error: label files have different lengths (" << truth.size() << " vs "
                << pred.size() << ")\n";
      return kExitData;
    }
    double acc = 0, nmi = 0, ari = 0;
    const fgmsc_status status =
        fgmsc_evaluate(pred.data(), truth.data(), pred.size(), &acc, &nmi, &ari);
    if (status != FGMSC_OK) fail(status);
    ordered_json doc{{"acc", acc}, {"nmi", nmi}, {"ari", ari}};
    std::cout << doc.dump() << "\n";
    return 0;
  }

  return kExitUsage;
}
