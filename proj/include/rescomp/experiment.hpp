#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rescomp/data_io.hpp"
#include "rescomp/metrics.hpp"

namespace rescomp {

enum class ReadoutChoice { linear, pca, both };

ReservoirKind parse_kind(const std::string& name);
ReadoutChoice parse_readout(const std::string& name);
const char* kind_name(ReservoirKind k);

/// Grid experiment description. File format: one `key = value` per line,
/// `#` comments, lists comma-separated.
struct ExperimentConfig {
  ReservoirKind kind = ReservoirKind::esn;
  std::vector<int> node_counts = {25, 50, 100};
  std::vector<double> input_gains = {0.5};
  ReadoutChoice readout = ReadoutChoice::both;
  std::vector<double> lambdas = {1e-4};
  std::vector<int> ranks = {10};
  int trials = 10;
  std::uint64_t seed = 1;
  std::string dataset_path;
  std::string out_dir = "results";
  int train_per_class = 400;
  std::string activation = "sine";
  double density = 0.2;      // reservoir fill fraction (esn)
  int mask_len = 0;          // tdr mask length; 0 -> node_count - 1
  double attenuation = -1.0; // tdr beta; < 0 -> 0.9999 * (1 - alpha)
  bool centered_pca = false;
  int threads = 0;           // 0 -> hardware concurrency

  static ExperimentConfig from_file(const std::filesystem::path& path);
  void validate() const;
};

/// One readout evaluation on one trial's test set. Fields that do not apply
/// to the row's reservoir or readout stay empty in the CSV.
struct ResultRow {
  std::string kind;
  std::optional<int> node_count;
  std::optional<double> input_gain;
  std::string readout;
  std::optional<double> lambda;
  std::optional<int> rank;
  int trial = 0;
  double accuracy = 0;
  double test_time_s = 0;
  std::optional<double> max_sep_vector;
  std::optional<double> max_sep_norm;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
};

/// Runs the full grid x trial schedule over a worker pool. Deterministic for
/// a fixed seed regardless of worker count (timing columns excepted); rows
/// come back sorted. Partial rows are flushed to `<out>/results.partial.csv`
/// as tasks finish; on success the final table lands in `<out>/results.csv`.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const LabeledDataset& dataset);

/// load_dataset + run_experiment.
ExperimentResult run_experiment_files(const ExperimentConfig& cfg);

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);

/// Divergence-vs-bound curves for one same-class signal pair, both
/// reservoir kinds, written as CSV series (and optional SVG charts).
struct BoundFigureConfig {
  std::string dataset_path;
  std::string out_dir = "results";
  std::uint64_t seed = 1;
  int class_index = 0;
  int esn_nodes = 100;
  int tdr_nodes = 100;
  double input_gain = 0.5;
  double density = 0.2;
  std::string activation = "sine";
  bool svg = false;
};

void emit_bound_figures(const BoundFigureConfig& cfg,
                        const LabeledDataset& dataset);

}  // namespace rescomp
