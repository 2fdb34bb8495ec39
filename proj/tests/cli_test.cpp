// Exercises the installed CLI binary end to end; the binary path arrives in
// FGMSC_CLI_BIN (set by CTest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

std::string cli_path() {
  const char* env = std::getenv("FGMSC_CLI_BIN");
  REQUIRE_MESSAGE(env != nullptr, "FGMSC_CLI_BIN must point at the CLI binary");
  return env;
}

int run_command(const std::string& command) {
  const int raw = std::system(command.c_str());
  REQUIRE(raw != -1);
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("fgmsc_cli_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("run on synthetic blobs writes results and a monotone trace") {
  const auto dir = temp_dir("run");
  const auto results = dir / "r.json";
  const auto trace = dir / "t.csv";
  const std::string command = cli_path() + " run --synth blobs:30x2x2 --seed 42 --iters 10" +
                              " --out " + results.string() + " --trace " + trace.string() +
                              " 2> /dev/null";
  CHECK(run_command(command) == 0);

  const json doc = json::parse(read_file(results));
  CHECK(doc["dataset"]["samples"] == 60);
  CHECK(doc["dataset"]["views"] == 2);
  CHECK(doc["metrics"]["acc"] == 1.0);
  CHECK(doc["metrics"]["nmi"] == 1.0);
  CHECK(doc["metrics"]["ari"] == 1.0);
  CHECK(doc["params"]["alpha"] == 0.01);
  CHECK(doc["params"]["seed"] == 42);
  CHECK(doc["params"]["variant"] == "full");
  CHECK(doc["library_version"] == "0.1.0");
  CHECK(doc.contains("command"));
  CHECK(doc["monotonicity_violations"].is_number());

  const auto rows = lines_of(read_file(trace));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "iter,total,recon,graph_reg,l1,fusion,spectral");
  CHECK(int(rows.size()) - 1 <= 10);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::stringstream line(rows[r]);
    std::string cell;
    std::getline(line, cell, ',');  // iter
    std::getline(line, cell, ',');  // total
    const double total = std::stod(cell);
    CHECK(total <= previous + 1e-6 * std::abs(previous));
    previous = total;
  }
}

TEST_CASE("flag validation exits with code 2") {
  CHECK(run_command(cli_path() + " run 2> /dev/null") == 2);
  CHECK(run_command(cli_path() + " run --synth nonsense:1 2> /dev/null") == 2);
  CHECK(run_command(cli_path() + " run --synth blobs:10x2x2 --variant wat 2> /dev/null") == 2);
  CHECK(run_command(cli_path() + " definitely-not-a-subcommand 2> /dev/null") == 2);
  const auto dir = temp_dir("flags");
  CHECK(run_command(cli_path() + " run --synth blobs:10x2x2 --manifest " +
                    (dir / "m.json").string() + " 2> /dev/null") == 2);
}

TEST_CASE("data errors exit with code 3") {
  const auto dir = temp_dir("dataerr");
  CHECK(run_command(cli_path() + " run --manifest " + (dir / "missing.json").string() +
                    " 2> /dev/null") == 3);
  write_file(dir / "broken.json", "{ not json");
  CHECK(run_command(cli_path() + " run --manifest " + (dir / "broken.json").string() +
                    " 2> /dev/null") == 3);
}

TEST_CASE("synth writes a loadable dataset directory") {
  const auto dir = temp_dir("synth");
  CHECK(run_command(cli_path() + " synth toy7 --out " + dir.string() + " > /dev/null") == 0);
  CHECK(std::filesystem::exists(dir / "toy7.json"));
  CHECK(std::filesystem::exists(dir / "labels.txt"));
  int view_files = 0;
  for (int v = 0; v < 4; ++v) {
    view_files += std::filesystem::exists(dir / ("view_" + std::to_string(v) + ".csv"));
  }
  CHECK(view_files == 4);
  CHECK(lines_of(read_file(dir / "view_0.csv")).size() == 7);  // samples as rows
  CHECK(lines_of(read_file(dir / "labels.txt")).size() == 7);

  const auto results = dir / "r.json";
  CHECK(run_command(cli_path() + " run --manifest " + (dir / "toy7.json").string() +
                    " --m 2 --k-init 2 --out " + results.string() + " 2> /dev/null") == 0);
  const json doc = json::parse(read_file(results));
  CHECK(doc["dataset"]["samples"] == 7);

  CHECK(run_command(cli_path() + " synth foo --out " + dir.string() + " 2> /dev/null") == 2);

  const auto blob_dir = dir / "blobs";
  CHECK(run_command(cli_path() + " synth blobs:30x2x2 --sep 10 --noise 1 --seed 42 --out " +
                    blob_dir.string() + " > /dev/null") == 0);
  const std::string first = read_file(blob_dir / "view_0.csv");
  const auto blob_dir2 = dir / "blobs2";
  CHECK(run_command(cli_path() + " synth blobs:30x2x2 --sep 10 --noise 1 --seed 42 --out " +
                    blob_dir2.string() + " > /dev/null") == 0);
  CHECK(read_file(blob_dir2 / "view_0.csv") == first);  // deterministic files
}

TEST_CASE("eval compares label files") {
  const auto dir = temp_dir("eval");
  write_file(dir / "truth.txt", "0\n0\n1\n1\n");
  write_file(dir / "same.txt", "0\n0\n1\n1\n");
  write_file(dir / "permuted.txt", "1\n1\n0\n0\n");
  write_file(dir / "half.txt", "0\n1\n0\n1\n");
  write_file(dir / "short.txt", "0\n1\n");

  const auto out = dir / "out.json";
  CHECK(run_command(cli_path() + " eval " + (dir / "truth.txt").string() + " " +
                    (dir / "same.txt").string() + " > " + out.string()) == 0);
  json doc = json::parse(read_file(out));
  CHECK(doc["acc"] == 1.0);
  CHECK(doc["nmi"] == 1.0);
  CHECK(doc["ari"] == 1.0);

  CHECK(run_command(cli_path() + " eval " + (dir / "truth.txt").string() + " " +
                    (dir / "permuted.txt").string() + " > " + out.string()) == 0);
  doc = json::parse(read_file(out));
  CHECK(doc["acc"] == 1.0);

  CHECK(run_command(cli_path() + " eval " + (dir / "truth.txt").string() + " " +
                    (dir / "half.txt").string() + " > " + out.string()) == 0);
  doc = json::parse(read_file(out));
  CHECK(doc["acc"] == 0.5);

  CHECK(run_command(cli_path() + " eval " + (dir / "truth.txt").string() + " " +
                    (dir / "short.txt").string() + " 2> /dev/null") == 3);
}

TEST_CASE("graph and embedding exports are written") {
  const auto dir = temp_dir("export");
  const auto graph = dir / "g.csv";
  const auto embedding = dir / "f.csv";
  CHECK(run_command(cli_path() + " run --synth blobs:10x2x2 --seed 1 --iters 3 --export-graph " +
                    graph.string() + " --export-embedding " + embedding.string() +
                    " > /dev/null 2> /dev/null") == 0);
  const auto graph_lines = lines_of(read_file(graph));
  REQUIRE(graph_lines.size() >= 2);
  CHECK(graph_lines[0] == "i,j,w");
  CHECK(lines_of(read_file(embedding)).size() == 20);
}

TEST_CASE("identical commands reproduce results byte for byte") {
  // same command, different working directories and worker counts
  const auto dir_a = temp_dir("determinism_a");
  const auto dir_b = temp_dir("determinism_b");
  const std::string args = " run --synth blobs:20x2x2 --seed 9 --iters 5 --out r.json"
                           " --trace t.csv 2> /dev/null";
  CHECK(run_command("cd " + dir_a.string() + " && FGMSC_THREADS=1 " + cli_path() + args) == 0);
  CHECK(run_command("cd " + dir_b.string() + " && FGMSC_THREADS=2 " + cli_path() + args) == 0);
  CHECK(read_file(dir_a / "r.json") == read_file(dir_b / "r.json"));
  CHECK(read_file(dir_a / "t.csv") == read_file(dir_b / "t.csv"));
}
