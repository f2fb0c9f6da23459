// Command-line front end: experiment sweeps, synthetic data, format
// conversion, divergence-bound figures, and dataset inspection.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rescomp/data_io.hpp"
#include "rescomp/experiment.hpp"

namespace {

using namespace rescomp;

int cmd_run(const std::string& config_path, ExperimentConfig cli,
            const std::map<std::string, bool>& given, bool baseline) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);

  // Explicit flags win over the config file.
  if (given.at("dataset")) cfg.dataset_path = cli.dataset_path;
  if (given.at("out")) cfg.out_dir = cli.out_dir;
  if (given.at("seed")) cfg.seed = cli.seed;
  if (given.at("kind")) cfg.kind = cli.kind;
  if (given.at("readout")) cfg.readout = cli.readout;
  if (given.at("trials")) cfg.trials = cli.trials;
  if (given.at("rank")) cfg.ranks = cli.ranks;
  if (given.at("nodes")) cfg.node_counts = cli.node_counts;
  if (given.at("alpha")) cfg.input_gains = cli.input_gains;
  if (given.at("lambda")) cfg.lambdas = cli.lambdas;
  if (given.at("threads")) cfg.threads = cli.threads;
  if (given.at("train-per-class")) cfg.train_per_class = cli.train_per_class;
  if (given.at("activation")) cfg.activation = cli.activation;
  if (given.at("density")) cfg.density = cli.density;
  if (given.at("mask-len")) cfg.mask_len = cli.mask_len;
  if (given.at("attenuation")) cfg.attenuation = cli.attenuation;
  if (given.at("centered-pca")) cfg.centered_pca = cli.centered_pca;
  if (baseline) {
    cfg.kind = ReservoirKind::none;
    if (cfg.readout == ReadoutChoice::both) cfg.readout = ReadoutChoice::pca;
  }

  const ExperimentResult result = run_experiment_files(cfg);
  std::cout << "wrote " << result.rows.size() << " rows to "
            << (std::filesystem::path(cfg.out_dir) / "results.csv").string()
            << '\n';

  // Per-configuration mean accuracy, aggregated over trials.
  std::map<std::string, std::pair<double, int>> agg;
  for (const auto& r : result.rows) {
    std::string key = r.kind;
    if (r.node_count) key += " N=" + std::to_string(*r.node_count);
    if (r.input_gain) key += " alpha=" + std::to_string(*r.input_gain);
    key += " " + r.readout;
    if (r.lambda) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", *r.lambda);
      key += " lambda=" + std::string(buf);
    }
    if (r.rank) key += " R=" + std::to_string(*r.rank);
    auto& [sum, n] = agg[key];
    sum += r.accuracy;
    ++n;
  }
  for (const auto& [key, acc] : agg)
    std::printf("%-60s mean accuracy %.4f over %d trial(s)\n", key.c_str(),
                acc.first / acc.second, acc.second);
  return 0;
}

int cmd_synth(int classes, int per_class, int length, double separation,
              double noise, std::uint64_t seed, const std::string& out,
              const std::string& format) {
  const LabeledDataset ds =
      synth_dataset(classes, per_class, length, separation, noise, seed);
  const DatasetFormat fmt =
      format == "csv" ? DatasetFormat::csv : DatasetFormat::binary;
  save_dataset(ds, out, fmt);
  std::cout << "wrote " << ds.size() << " signals of length "
            << ds.signal_length() << " (" << classes << " classes) to " << out
            << '\n';
  return 0;
}

int cmd_convert(const std::string& in, const std::string& out,
                const std::string& format) {
  const LabeledDataset ds = load_dataset(in);
  DatasetFormat fmt;
  if (format == "csv") {
    fmt = DatasetFormat::csv;
  } else if (format == "binary") {
    fmt = DatasetFormat::binary;
  } else {
    const auto ext = std::filesystem::path(out).extension();
    fmt = ext == ".csv" ? DatasetFormat::csv : DatasetFormat::binary;
  }
  save_dataset(ds, out, fmt);
  std::cout << "wrote " << out << '\n';
  return 0;
}

int cmd_bounds(const BoundFigureConfig& cfg) {
  emit_bound_figures(cfg, load_dataset(cfg.dataset_path));
  std::cout << "wrote esn_bound_ratio.csv and tdr_bound_ratio.csv to "
            << cfg.out_dir << (cfg.svg ? " (with svg)" : "") << '\n';
  return 0;
}

int cmd_info(const std::string& path) {
  const LabeledDataset ds = load_dataset(path);
  std::cout << "samples:       " << ds.size() << '\n'
            << "signal length: " << ds.signal_length() << '\n'
            << "classes:       " << ds.partition.class_count << '\n';
  for (int k = 0; k < ds.partition.class_count; ++k)
    std::cout << "  class " << k << ": "
              << ds.partition.members[k].size() << " signals\n";
  double lo = 1.0, hi = 0.0;
  for (const auto& s : ds.signals) {
    lo = std::min(lo, s.values.minCoeff());
    hi = std::max(hi, s.values.maxCoeff());
  }
  std::cout << "value range:   [" << lo << ", " << hi << "]\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reservoir-computing classification toolkit"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "run an experiment sweep");
  std::string config_path;
  ExperimentConfig cli;
  std::string kind_s = "esn", readout_s = "both";
  bool baseline = false;
  run->add_option("--config", config_path, "config file (key = value lines)")
      ->check(CLI::ExistingFile);
  auto* o_dataset = run->add_option("--dataset", cli.dataset_path, "dataset path");
  auto* o_out = run->add_option("--out", cli.out_dir, "output directory");
  auto* o_seed = run->add_option("--seed", cli.seed, "base seed");
  auto* o_kind = run->add_option("--kind", kind_s, "esn | tdr | none");
  auto* o_readout = run->add_option("--readout", readout_s, "linear | pca | both");
  auto* o_trials = run->add_option("--trials", cli.trials, "independent trials");
  auto* o_rank = run->add_option("--rank", cli.ranks, "pca rank(s)")
                     ->delimiter(',');
  auto* o_nodes = run->add_option("--nodes", cli.node_counts, "node count(s)")
                      ->delimiter(',');
  auto* o_alpha = run->add_option("--alpha", cli.input_gains, "input gain(s)")
                      ->delimiter(',');
  auto* o_lambda = run->add_option("--lambda", cli.lambdas, "ridge lambda(s)")
                       ->delimiter(',');
  auto* o_threads = run->add_option("--threads", cli.threads, "worker threads (0 = auto)");
  auto* o_tpc = run->add_option("--train-per-class", cli.train_per_class,
                                "training signals per class");
  auto* o_act = run->add_option("--activation", cli.activation,
                                "sine | tanh | logistic | identity");
  auto* o_density = run->add_option("--density", cli.density, "esn fill density");
  auto* o_mask = run->add_option("--mask-len", cli.mask_len,
                                 "tdr mask length (0 = N-1)");
  auto* o_atten = run->add_option("--attenuation", cli.attenuation,
                                  "tdr feedback (negative = auto)");
  auto* o_centered = run->add_flag("--centered-pca", cli.centered_pca,
                                   "center norm vectors before pca");
  run->add_flag("--baseline", baseline, "shortcut for --kind none --readout pca");

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  int s_classes = 3, s_per_class = 200, s_length = 64;
  double s_sep = 1.0, s_noise = 0.05;
  std::uint64_t s_seed = 1;
  std::string s_out, s_format = "auto";
  synth->add_option("--classes", s_classes, "class count");
  synth->add_option("--per-class", s_per_class, "signals per class");
  synth->add_option("--length", s_length, "signal length");
  synth->add_option("--separation", s_sep, "class separation in [0, 1]");
  synth->add_option("--noise", s_noise, "uniform noise amplitude");
  synth->add_option("--seed", s_seed, "seed");
  synth->add_option("--out", s_out, "output path")->required();
  synth->add_option("--format", s_format, "csv | binary (default: by extension)");

  // --- convert ---
  auto* convert = app.add_subcommand("convert", "convert between csv and binary");
  std::string c_in, c_out, c_format = "auto";
  convert->add_option("--in", c_in, "input dataset")->required()
      ->check(CLI::ExistingFile);
  convert->add_option("--out", c_out, "output path")->required();
  convert->add_option("--format", c_format, "csv | binary (default: by extension)");

  // --- bounds ---
  auto* bounds = app.add_subcommand("bounds",
                                    "emit divergence-vs-bound ratio figures");
  BoundFigureConfig bcfg;
  bounds->add_option("--dataset", bcfg.dataset_path, "dataset path")->required();
  bounds->add_option("--out", bcfg.out_dir, "output directory");
  bounds->add_option("--seed", bcfg.seed, "seed");
  bounds->add_option("--class", bcfg.class_index, "class to draw the pair from");
  bounds->add_option("--esn-nodes", bcfg.esn_nodes, "esn node count");
  bounds->add_option("--tdr-nodes", bcfg.tdr_nodes, "tdr node count");
  bounds->add_option("--alpha", bcfg.input_gain, "input gain");
  bounds->add_option("--density", bcfg.density, "esn fill density");
  bounds->add_option("--activation", bcfg.activation, "activation");
  bounds->add_flag("--svg", bcfg.svg, "also write svg charts");

  // --- info ---
  auto* info = app.add_subcommand("info", "describe a dataset");
  std::string i_path;
  info->add_option("--dataset", i_path, "dataset path")->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      cli.kind = rescomp::parse_kind(kind_s);
      cli.readout = rescomp::parse_readout(readout_s);
      std::map<std::string, bool> given = {
          {"dataset", o_dataset->count() > 0},
          {"out", o_out->count() > 0},
          {"seed", o_seed->count() > 0},
          {"kind", o_kind->count() > 0},
          {"readout", o_readout->count() > 0},
          {"trials", o_trials->count() > 0},
          {"rank", o_rank->count() > 0},
          {"nodes", o_nodes->count() > 0},
          {"alpha", o_alpha->count() > 0},
          {"lambda", o_lambda->count() > 0},
          {"threads", o_threads->count() > 0},
          {"train-per-class", o_tpc->count() > 0},
          {"activation", o_act->count() > 0},
          {"density", o_density->count() > 0},
          {"mask-len", o_mask->count() > 0},
          {"attenuation", o_atten->count() > 0},
          {"centered-pca", o_centered->count() > 0},
      };
      return cmd_run(config_path, cli, given, baseline);
    }
    if (synth->parsed())
      return cmd_synth(s_classes, s_per_class, s_length, s_sep, s_noise,
                       s_seed, s_out,
                       s_format == "auto"
                           ? (std::filesystem::path(s_out).extension() == ".csv"
                                  ? "csv"
                                  : "binary")
                           : s_format);
    if (convert->parsed()) return cmd_convert(c_in, c_out, c_format);
    if (bounds->parsed()) return cmd_bounds(bcfg);
    if (info->parsed()) return cmd_info(i_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
