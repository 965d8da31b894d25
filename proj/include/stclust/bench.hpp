#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stclust/cfws.hpp"
#include "stclust/corpus.hpp"
#include "stclust/hac.hpp"
#include "stclust/metrics.hpp"

namespace stclust {

enum class Algorithm { kNstc, kCfws };
std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
  // Synthetic preset names or corpus file paths.
  std::vector<std::string> datasets = benchmark_preset_names();
  std::vector<Algorithm> algorithms{Algorithm::kNstc, Algorithm::kCfws};
  std::vector<double> min_supports{0.05, 0.06, 0.07};
  std::size_t k_mismatch = 2;
  std::size_t min_df = 2;
  // Replaces the seed of every synthetic preset when set.
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = "bench-out";
  std::vector<std::string> formats{"csv", "txt"};
  std::optional<std::filesystem::path> stoplist;

  // Throws std::invalid_argument.
  void validate() const;
};

// Applies `key = value` lines ('#' starts a comment) on top of `base`.
// Keys: dataset, algorithm, min_support, k_mismatch, min_df, seed, out, format, stoplist.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
// Applies one key/value pair; shared by the config file and CLI flags.
void apply_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

struct HierarchyScore {
  double best_f = 0.0;
  // Index into the K = n..1 sequence of levels.
  std::size_t best_level = 0;
  std::size_t clusters_at_best = 0;
  // Document clusters at the best level.
  FlatClustering best_clustering;
  bool overlapping_at_best = false;
  std::vector<double> f_per_level;
};

// Scores every level of a hierarchy over items that each stand for a set of
// documents. A flat cluster is the union of its items' documents, so the
// clusters of a level overlap when items share documents.
HierarchyScore evaluate_hierarchy(const Dendrogram& dendrogram,
                                  const std::vector<std::vector<DocIndex>>& item_docs,
                                  const GoldStandard& gold);

struct StageTiming {
  std::string stage;
  std::optional<double> min_support;
  double seconds = 0.0;
};

struct CellResult {
  std::string dataset;
  Algorithm algorithm = Algorithm::kNstc;
  bool ok = false;
  std::string error;
  double best_f = 0.0;
  std::size_t best_k = 0;
  std::optional<double> best_min_support;
  std::optional<double> purity;
  std::optional<double> entropy;
  // Purity and entropy are not reported for algorithms whose clusters overlap.
  bool overlap = false;
  std::vector<StageTiming> timings;
  std::vector<std::string> diagnostics;
};

struct BenchmarkReport {
  ExperimentConfig config;
  std::vector<std::string> datasets;  // row labels, config order
  std::vector<std::size_t> dataset_sizes;
  std::vector<CellResult> cells;      // dataset-major, algorithm order of config

  const CellResult* cell(const std::string& dataset, Algorithm a) const;
};

BenchmarkReport run_benchmark(const ExperimentConfig& config);

// Writes fscore/purity/entropy tables in each requested format plus
// timing.csv, details.csv and run-metadata.txt. Returns the files written.
std::vector<std::filesystem::path> emit_tables(const BenchmarkReport& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<std::string>& formats);

}  // namespace stclust
