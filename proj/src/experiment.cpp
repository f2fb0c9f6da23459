#include "rescomp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rescomp/readout_linear.hpp"
#include "rescomp/readout_pca.hpp"
#include "rescomp/reservoir.hpp"
#include "rescomp/rng.hpp"

namespace rescomp {

ReservoirKind parse_kind(const std::string& name) {
  if (name == "esn") return ReservoirKind::esn;
  if (name == "tdr") return ReservoirKind::tdr;
  if (name == "none") return ReservoirKind::none;
  throw std::invalid_argument("unknown reservoir kind: " + name);
}

ReadoutChoice parse_readout(const std::string& name) {
  if (name == "linear") return ReadoutChoice::linear;
  if (name == "pca") return ReadoutChoice::pca;
  if (name == "both") return ReadoutChoice::both;
  throw std::invalid_argument("unknown readout choice: " + name);
}

const char* kind_name(ReservoirKind k) {
  switch (k) {
    case ReservoirKind::esn: return "esn";
    case ReservoirKind::tdr: return "tdr";
    case ReservoirKind::none: return "none";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty list element");
    out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

int to_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("bad unsigned integer: " + s);
  return v;
}

double to_double(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("bad number: " + s);
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("bad boolean: " + s);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config " + path.string());

  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": empty value for '" + key + "'");

    try {
      if (key == "kind") {
        cfg.kind = parse_kind(value);
      } else if (key == "node_counts") {
        cfg.node_counts.clear();
        for (const auto& v : split_list(value)) cfg.node_counts.push_back(to_int(v));
      } else if (key == "input_gains") {
        cfg.input_gains.clear();
        for (const auto& v : split_list(value)) cfg.input_gains.push_back(to_double(v));
      } else if (key == "readout") {
        cfg.readout = parse_readout(value);
      } else if (key == "lambdas") {
        cfg.lambdas.clear();
        for (const auto& v : split_list(value)) cfg.lambdas.push_back(to_double(v));
      } else if (key == "ranks") {
        cfg.ranks.clear();
        for (const auto& v : split_list(value)) cfg.ranks.push_back(to_int(v));
      } else if (key == "trials") {
        cfg.trials = to_int(value);
      } else if (key == "seed") {
        cfg.seed = to_u64(value);
      } else if (key == "dataset") {
        cfg.dataset_path = value;
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "train_per_class") {
        cfg.train_per_class = to_int(value);
      } else if (key == "activation") {
        cfg.activation = value;
      } else if (key == "density") {
        cfg.density = to_double(value);
      } else if (key == "mask_len") {
        cfg.mask_len = to_int(value);
      } else if (key == "attenuation") {
        cfg.attenuation = to_double(value);
      } else if (key == "centered_pca") {
        cfg.centered_pca = to_bool(value);
      } else if (key == "threads") {
        cfg.threads = to_int(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials < 1");
  if (train_per_class < 1)
    throw std::invalid_argument("config: train_per_class < 1");
  if (dataset_path.empty()) throw std::invalid_argument("config: no dataset");
  if (out_dir.empty()) throw std::invalid_argument("config: no output directory");
  if (threads < 0) throw std::invalid_argument("config: threads < 0");
  Activation::parse(activation);

  const bool wants_linear =
      readout == ReadoutChoice::linear || readout == ReadoutChoice::both;
  const bool wants_pca =
      readout == ReadoutChoice::pca || readout == ReadoutChoice::both;

  if (kind == ReservoirKind::none) {
    if (readout == ReadoutChoice::linear)
      throw std::invalid_argument(
          "config: the raw baseline supports only the pca readout");
  } else {
    if (node_counts.empty()) throw std::invalid_argument("config: no node counts");
    for (int n : node_counts) {
      if (n < 1) throw std::invalid_argument("config: node count < 1");
      if (kind == ReservoirKind::tdr && n < 2)
        throw std::invalid_argument("config: tdr needs node count >= 2");
    }
    if (input_gains.empty()) throw std::invalid_argument("config: no input gains");
    for (double a : input_gains)
      if (!(a > 0.0) || !(a <= 1.0))
        throw std::invalid_argument("config: input gains must lie in (0, 1]");
    if (!(density > 0.0) || density > 1.0)
      throw std::invalid_argument("config: density must lie in (0, 1]");
    if (mask_len < 0) throw std::invalid_argument("config: mask_len < 0");
  }

  if (wants_linear && kind != ReservoirKind::none) {
    if (lambdas.empty()) throw std::invalid_argument("config: no lambdas");
    for (double l : lambdas)
      if (!(l > 0.0)) throw std::invalid_argument("config: lambda must be > 0");
  }
  if (wants_pca || kind == ReservoirKind::none) {
    if (ranks.empty()) throw std::invalid_argument("config: no ranks");
    for (int r : ranks) {
      if (r < 1) throw std::invalid_argument("config: rank < 1");
      if (r > train_per_class)
        throw std::invalid_argument("config: rank exceeds train_per_class");
    }
  }
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_cell(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += fmt(*v);
}

void append_cell(std::string& line, const std::optional<int>& v) {
  line += ',';
  if (v) line += std::to_string(*v);
}

std::string row_to_csv(const ResultRow& r) {
  std::string line = r.kind;
  append_cell(line, r.node_count);
  append_cell(line, r.input_gain);
  line += ',' + r.readout;
  append_cell(line, r.lambda);
  append_cell(line, r.rank);
  line += ',' + std::to_string(r.trial);
  line += ',' + fmt(r.accuracy);
  line += ',' + fmt(r.test_time_s);
  append_cell(line, r.max_sep_vector);
  append_cell(line, r.max_sep_norm);
  return line;
}

constexpr const char* kCsvHeader =
    "kind,N,alpha,readout,lambda,rank,trial,accuracy,test_time_s,"
    "max_sep_vector,max_sep_norm";

struct Task {
  ReservoirKind kind;
  int node_count;     // 0 for none
  double input_gain;  // 0 for none
  int trial;
};

struct TrialData {
  SplitIndices indices;
  ClassPartition train_partition;
  std::vector<int> test_labels;  // label per test index, test order
};

// Stable total order for the output table.
bool row_less(const ResultRow& a, const ResultRow& b) {
  auto key = [](const ResultRow& r) {
    return std::make_tuple(r.kind, r.node_count.value_or(-1),
                           r.input_gain.value_or(-1.0), r.readout,
                           r.lambda.value_or(-1.0), r.rank.value_or(-1),
                           r.trial);
  };
  return key(a) < key(b);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << row_to_csv(r) << '\n';
  if (!os) throw std::runtime_error("write_results_csv: stream failure");
}

namespace {

// Everything one worker needs to evaluate one grid point on one trial.
class TaskRunner {
 public:
  TaskRunner(const ExperimentConfig& cfg, const LabeledDataset& ds,
             const std::vector<TrialData>& trials)
      : cfg_(cfg), ds_(ds), trials_(trials),
        act_(Activation::parse(cfg.activation)) {}

  std::vector<ResultRow> run(const Task& task) const {
    switch (task.kind) {
      case ReservoirKind::none: return run_baseline(task);
      default: return run_reservoir(task);
    }
  }

 private:
  std::uint64_t task_seed(const Task& t) const {
    std::uint64_t s = mix_seed(cfg_.seed, static_cast<std::uint64_t>(t.kind) + 1);
    s = mix_seed(s, static_cast<std::uint64_t>(t.node_count));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(t.input_gain));
    return mix_seed(s, 0x7249414Cull + static_cast<std::uint64_t>(t.trial));
  }

  std::vector<ResultRow> run_baseline(const Task& task) const {
    const TrialData& trial = trials_[task.trial];
    const int t_len = ds_.signal_length();
    const SampleTimes omega = SampleTimes::all(t_len);

    std::vector<Eigen::VectorXd> train_vecs;
    train_vecs.reserve(trial.indices.train.size());
    for (int idx : trial.indices.train)
      train_vecs.push_back(ds_.signals[idx].values);

    std::vector<ResultRow> rows;
    for (int rank : cfg_.ranks) {
      const PcaReadoutModel model = train_pca(
          train_vecs, trial.train_partition, rank, omega, cfg_.centered_pca);

      const auto t0 = std::chrono::steady_clock::now();
      int correct = 0;
      for (std::size_t i = 0; i < trial.indices.test.size(); ++i) {
        const PcaDecision d =
            classify_pca(model, ds_.signals[trial.indices.test[i]].values);
        if (d.class_index == trial.test_labels[i]) ++correct;
      }
      const double elapsed = seconds_since(t0);

      ResultRow row;
      row.kind = kind_name(ReservoirKind::none);
      row.readout = "pca";
      row.rank = rank;
      row.trial = task.trial;
      row.accuracy =
          static_cast<double>(correct) / static_cast<double>(trial.indices.test.size());
      row.test_time_s = elapsed;
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::vector<ResultRow> run_reservoir(const Task& task) const {
    const TrialData& trial = trials_[task.trial];
    const int t_raw = ds_.signal_length();
    Rng rng(task_seed(task));

    // Reservoir construction and the per-signal feature map.
    EsnParams esn;
    TdrParams tdr;
    MultiplexMask mask;
    SampleTimes omega;
    if (task.kind == ReservoirKind::esn) {
      const double target = 0.9999 * (1.0 - task.input_gain);
      Rng draw = rng.child(1);
      esn = make_esn(task.node_count, task.input_gain, cfg_.density, target,
                     act_, draw);
      omega = SampleTimes::all(t_raw);
    } else {
      const int mlen =
          cfg_.mask_len > 0 ? cfg_.mask_len : task.node_count - 1;
      const double beta = cfg_.attenuation >= 0.0
                              ? cfg_.attenuation
                              : 0.9999 * (1.0 - task.input_gain);
      tdr = make_tdr(task.node_count, task.input_gain, beta, act_);
      Rng draw = rng.child(2);
      mask = MultiplexMask::random(mlen, draw);
      omega = SampleTimes::strided(mlen, t_raw);
    }

    auto features = [&](int signal_idx) -> Eigen::MatrixXd {
      if (task.kind == ReservoirKind::esn)
        return drive_esn_sampled(esn, ds_.signals[signal_idx], omega);
      return drive_tdr_sampled(tdr, apply_mask(ds_.signals[signal_idx], mask),
                               omega);
    };

    std::vector<Eigen::MatrixXd> train_blocks;
    train_blocks.reserve(trial.indices.train.size());
    for (int idx : trial.indices.train) train_blocks.push_back(features(idx));

    const double sep_vector = max_separation(separation_ratio(
        train_blocks, trial.train_partition, SeparationVariant::vector));
    const double sep_norm = max_separation(separation_ratio(
        train_blocks, trial.train_partition, SeparationVariant::norm));

    auto base_row = [&](const char* readout) {
      ResultRow row;
      row.kind = kind_name(task.kind);
      row.node_count = task.node_count;
      row.input_gain = task.input_gain;
      row.readout = readout;
      row.trial = task.trial;
      row.max_sep_vector = sep_vector;
      row.max_sep_norm = sep_norm;
      return row;
    };

    const bool wants_linear = cfg_.readout == ReadoutChoice::linear ||
                              cfg_.readout == ReadoutChoice::both;
    const bool wants_pca = cfg_.readout == ReadoutChoice::pca ||
                           cfg_.readout == ReadoutChoice::both;

    std::vector<ResultRow> rows;
    if (wants_linear) {
      for (double lambda : cfg_.lambdas) {
        const LinearReadoutModel model =
            train_linear(train_blocks, trial.train_partition, lambda, omega);

        const auto t0 = std::chrono::steady_clock::now();
        int correct = 0;
        for (std::size_t i = 0; i < trial.indices.test.size(); ++i) {
          const LinearDecision d =
              classify_linear(model, features(trial.indices.test[i]));
          if (d.class_index == trial.test_labels[i]) ++correct;
        }
        const double elapsed = seconds_since(t0);

        ResultRow row = base_row("linear");
        row.lambda = lambda;
        row.accuracy = static_cast<double>(correct) /
                       static_cast<double>(trial.indices.test.size());
        row.test_time_s = elapsed;
        rows.push_back(std::move(row));
      }
    }
    if (wants_pca) {
      std::vector<Eigen::VectorXd> train_vecs;
      train_vecs.reserve(train_blocks.size());
      for (const auto& block : train_blocks)
        train_vecs.push_back(norm_vector(block));

      for (int rank : cfg_.ranks) {
        const PcaReadoutModel model =
            train_pca(train_vecs, trial.train_partition, rank, omega,
                      cfg_.centered_pca);

        const auto t0 = std::chrono::steady_clock::now();
        int correct = 0;
        for (std::size_t i = 0; i < trial.indices.test.size(); ++i) {
          const PcaDecision d = classify_pca(
              model, norm_vector(features(trial.indices.test[i])));
          if (d.class_index == trial.test_labels[i]) ++correct;
        }
        const double elapsed = seconds_since(t0);

        ResultRow row = base_row("pca");
        row.rank = rank;
        row.accuracy = static_cast<double>(correct) /
                       static_cast<double>(trial.indices.test.size());
        row.test_time_s = elapsed;
        rows.push_back(std::move(row));
      }
    }
    return rows;
  }

  const ExperimentConfig& cfg_;
  const LabeledDataset& ds_;
  const std::vector<TrialData>& trials_;
  Activation act_;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const LabeledDataset& dataset) {
  cfg.validate();
  dataset.validate();
  if (cfg.train_per_class >= dataset.partition.smallest_class())
    throw std::invalid_argument(
        "config: train_per_class must be smaller than the smallest class");

  // One split per trial, shared by every grid point of that trial.
  std::vector<TrialData> trials(cfg.trials);
  const std::vector<int> labels = dataset.partition.to_labels(dataset.size());
  for (int t = 0; t < cfg.trials; ++t) {
    TrialData& td = trials[t];
    td.indices = split_indices(
        dataset, SplitSpec{cfg.train_per_class,
                           mix_seed(cfg.seed, 0x53504C49ull + t)});
    std::vector<int> train_labels;
    for (int idx : td.indices.train) train_labels.push_back(labels[idx]);
    td.train_partition = ClassPartition::from_labels(
        train_labels, dataset.partition.class_count);
    for (int idx : td.indices.test) td.test_labels.push_back(labels[idx]);
  }

  std::vector<Task> tasks;
  if (cfg.kind == ReservoirKind::none) {
    for (int t = 0; t < cfg.trials; ++t)
      tasks.push_back({ReservoirKind::none, 0, 0.0, t});
  } else {
    for (int t = 0; t < cfg.trials; ++t)
      for (int n : cfg.node_counts)
        for (double a : cfg.input_gains) tasks.push_back({cfg.kind, n, a, t});
  }

  std::filesystem::create_directories(cfg.out_dir);
  const auto partial_path =
      std::filesystem::path(cfg.out_dir) / "results.partial.csv";
  std::ofstream partial(partial_path, std::ios::trunc);
  if (!partial)
    throw std::runtime_error("cannot open " + partial_path.string());
  partial << kCsvHeader << '\n' << std::flush;

  const TaskRunner runner(cfg, dataset, trials);
  ExperimentResult result;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        std::vector<ResultRow> rows = runner.run(tasks[i]);
        std::lock_guard<std::mutex> lock(mu);
        for (auto& row : rows) {
          partial << row_to_csv(row) << '\n';
          result.rows.push_back(std::move(row));
        }
        partial.flush();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
        break;
      }
    }
  };

  unsigned n_workers = cfg.threads > 0
                           ? static_cast<unsigned>(cfg.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers,
                                 static_cast<unsigned>(tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  partial.flush();

  if (first_error) std::rethrow_exception(first_error);

  std::sort(result.rows.begin(), result.rows.end(), row_less);
  const auto final_path = std::filesystem::path(cfg.out_dir) / "results.csv";
  std::ofstream out(final_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + final_path.string());
  write_results_csv(out, result.rows);
  out.close();
  std::filesystem::remove(partial_path);
  return result;
}

ExperimentResult run_experiment_files(const ExperimentConfig& cfg) {
  return run_experiment(cfg, load_dataset(cfg.dataset_path));
}

namespace {

void write_svg_chart(const std::filesystem::path& path,
                     const std::string& title,
                     const std::vector<double>& values) {
  const int width = 860, height = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  const int pw = width - ml - mr, ph = height - mt - mb;
  double ymax = 0.0;
  for (double v : values) ymax = std::max(ymax, v);
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;

  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
     << "' height='" << height << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n"
     << "<text x='" << width / 2 << "' y='24' text-anchor='middle' "
        "font-family='sans-serif' font-size='15'>" << title << "</text>\n";

  // Axes.
  os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
     << mt + ph << "' stroke='black'/>\n"
     << "<line x1='" << ml << "' y1='" << mt + ph << "' x2='" << ml + pw
     << "' y2='" << mt + ph << "' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double frac = i / 4.0;
    const double y = mt + ph - frac * ph;
    char label[32];
    std::snprintf(label, sizeof label, "%.3g", frac * ymax);
    os << "<line x1='" << ml - 4 << "' y1='" << y << "' x2='" << ml
       << "' y2='" << y << "' stroke='black'/>\n"
       << "<text x='" << ml - 8 << "' y='" << y + 4
       << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
       << label << "</text>\n";
    const double x = ml + frac * pw;
    os << "<text x='" << x << "' y='" << mt + ph + 18
       << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
       << static_cast<int>(frac * (values.size() - 1)) << "</text>\n";
  }
  os << "<text x='" << ml + pw / 2 << "' y='" << height - 12
     << "' text-anchor='middle' font-family='sans-serif' font-size='12'>t"
        "</text>\n";

  os << "<polyline fill='none' stroke='steelblue' stroke-width='1.2' points='";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = ml + pw * static_cast<double>(i) / (values.size() - 1);
    const double y = mt + ph - ph * std::min(values[i], ymax) / ymax;
    os << x << ',' << y << ' ';
  }
  os << "'/>\n</svg>\n";
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void emit_bound_figures(const BoundFigureConfig& cfg,
                        const LabeledDataset& dataset) {
  dataset.validate();
  if (cfg.class_index < 0 ||
      cfg.class_index >= dataset.partition.class_count)
    throw std::invalid_argument("bound figures: class index out of range");
  const auto& members = dataset.partition.members[cfg.class_index];
  if (members.size() < 2)
    throw std::invalid_argument("bound figures: class needs two signals");
  if (!(cfg.input_gain > 0.0) || !(cfg.input_gain <= 1.0))
    throw std::invalid_argument("bound figures: input gain must lie in (0, 1]");
  if (cfg.tdr_nodes < 2)
    throw std::invalid_argument("bound figures: tdr needs node count >= 2");

  const Activation act = Activation::parse(cfg.activation);
  Rng rng(cfg.seed);

  // Two distinct same-class signals.
  const int a = static_cast<int>(rng.uniform_index(members.size()));
  int b = static_cast<int>(rng.uniform_index(members.size() - 1));
  if (b >= a) ++b;
  const int idx_i = members[a], idx_j = members[b];

  std::filesystem::create_directories(cfg.out_dir);
  const double target = 0.9999 * (1.0 - cfg.input_gain);

  {
    Rng draw = rng.child(1);
    const EsnParams esn = make_esn(cfg.esn_nodes, cfg.input_gain, cfg.density,
                                   target, act, draw);
    const BoundRatioSeries series = esn_bound_ratio(
        esn, dataset.signals[idx_i], dataset.signals[idx_j], {idx_i, idx_j});
    std::ofstream os(std::filesystem::path(cfg.out_dir) / "esn_bound_ratio.csv");
    write_series_csv(os, series.ratios);
    if (cfg.svg)
      write_svg_chart(
          std::filesystem::path(cfg.out_dir) / "esn_bound_ratio.svg",
          "esn divergence / bound", series.ratios);
  }
  {
    Rng draw = rng.child(2);
    const TdrParams tdr = make_tdr(cfg.tdr_nodes, cfg.input_gain, target, act);
    const MultiplexMask mask = MultiplexMask::random(cfg.tdr_nodes - 1, draw);
    const BoundRatioSeries series = tdr_bound_ratio(
        tdr, apply_mask(dataset.signals[idx_i], mask),
        apply_mask(dataset.signals[idx_j], mask), {idx_i, idx_j});
    std::ofstream os(std::filesystem::path(cfg.out_dir) / "tdr_bound_ratio.csv");
    write_series_csv(os, series.ratios);
    if (cfg.svg)
      write_svg_chart(
          std::filesystem::path(cfg.out_dir) / "tdr_bound_ratio.svg",
          "tdr divergence / bound", series.ratios);
  }
}

}  // namespace rescomp
