#include "rescomp/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "binio.hpp"
#include "rescomp/rng.hpp"

namespace rescomp {

namespace {

constexpr char kDatasetMagic[5] = "RCDS";
constexpr std::uint32_t kDatasetVersion = 1;
constexpr std::uint64_t kMaxSamples = 10'000'000;
constexpr std::uint64_t kMaxLength = 10'000'000;
constexpr std::uint64_t kMaxValues = 200'000'000;

void check_value_range(const LabeledDataset& ds) {
  for (const auto& s : ds.signals)
    if (s.values.minCoeff() < 0.0 || s.values.maxCoeff() > 1.0)
      throw std::runtime_error("dataset: values must lie in [0, 1]");
}

LabeledDataset load_binary(std::ifstream& is, const std::string& name) {
  binio::expect_magic(is, kDatasetMagic, name);
  const auto version = binio::read_pod<std::uint32_t>(is);
  if (version != kDatasetVersion)
    throw std::runtime_error(name + ": unsupported version " +
                             std::to_string(version));
  const std::uint64_t j_count = binio::read_pod<std::uint32_t>(is);
  const std::uint64_t t_len = binio::read_pod<std::uint32_t>(is);
  const std::uint64_t k_count = binio::read_pod<std::uint32_t>(is);
  if (j_count == 0 || j_count > kMaxSamples)
    throw std::runtime_error(name + ": bad sample count");
  if (t_len == 0 || t_len > kMaxLength)
    throw std::runtime_error(name + ": bad sample length");
  if (k_count == 0 || k_count > j_count)
    throw std::runtime_error(name + ": bad class count");
  if (j_count * t_len > kMaxValues)
    throw std::runtime_error(name + ": payload too large");

  std::vector<int> labels(j_count);
  for (auto& l : labels) {
    const auto v = binio::read_pod<std::uint32_t>(is);
    if (v >= k_count) throw std::runtime_error(name + ": label out of range");
    l = static_cast<int>(v);
  }

  LabeledDataset ds;
  ds.signals.resize(j_count);
  for (auto& s : ds.signals) {
    s.values.resize(static_cast<Eigen::Index>(t_len));
    binio::read_bytes(is, s.values.data(), t_len * sizeof(double));
  }
  binio::expect_eof(is, name);

  ds.partition = ClassPartition::from_labels(labels, static_cast<int>(k_count));
  ds.validate();
  check_value_range(ds);
  return ds;
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  const std::string name = path.string();

  std::vector<int> labels;
  std::vector<Eigen::VectorXd> rows;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> vals;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const char* p = line.data();
    const char* end = p + line.size();
    auto fail = [&](const char* why) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + why);
    };

    int label = 0;
    auto [lp, lec] = std::from_chars(p, end, label);
    if (lec != std::errc{} || lp == end || *lp != ',' || label < 0)
      fail("expected 'label,v1,...'");
    p = lp + 1;

    vals.clear();
    while (true) {
      double v = 0;
      auto [vp, vec] = std::from_chars(p, end, v);
      if (vec != std::errc{}) fail("bad numeric value");
      vals.push_back(v);
      if (vp == end) break;
      if (*vp != ',') fail("unexpected character");
      p = vp + 1;
      if (p == end) fail("trailing comma");
    }
    if (vals.empty()) fail("no values");

    labels.push_back(label);
    rows.emplace_back(Eigen::Map<Eigen::VectorXd>(vals.data(),
                                                  static_cast<Eigen::Index>(vals.size())));
    if (rows.size() > kMaxSamples) fail("too many samples");
  }
  if (rows.empty()) throw std::runtime_error(name + ": no samples");

  const int k_count = *std::max_element(labels.begin(), labels.end()) + 1;
  LabeledDataset ds;
  ds.signals.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) ds.signals[i].values = rows[i];
  ds.partition = ClassPartition::from_labels(labels, k_count);
  ds.validate();
  check_value_range(ds);
  return ds;
}

}  // namespace

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open " + path.string());
  char head[4] = {0, 0, 0, 0};
  probe.read(head, 4);
  const bool is_binary =
      probe.gcount() == 4 && std::memcmp(head, kDatasetMagic, 4) == 0;
  probe.close();

  if (is_binary) {
    std::ifstream is(path, std::ios::binary);
    return load_binary(is, path.string());
  }
  return load_csv(path);
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path,
                  DatasetFormat format) {
  ds.validate();
  check_value_range(ds);
  const std::vector<int> labels = ds.partition.to_labels(ds.size());

  if (format == DatasetFormat::binary) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    binio::write_magic(os, kDatasetMagic);
    binio::write_pod<std::uint32_t>(os, kDatasetVersion);
    binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(ds.size()));
    binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(ds.signal_length()));
    binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(ds.partition.class_count));
    for (int l : labels) binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(l));
    for (const auto& s : ds.signals)
      binio::write_bytes(os, s.values.data(),
                         static_cast<std::size_t>(s.values.size()) * sizeof(double));
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path.string());
    return;
  }

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  char buf[40];
  for (int j = 0; j < ds.size(); ++j) {
    os << labels[j];
    for (Eigen::Index i = 0; i < ds.signals[j].values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", ds.signals[j].values[i]);
      os << ',' << buf;
    }
    os << '\n';
  }
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

SplitIndices split_indices(const LabeledDataset& ds, const SplitSpec& spec) {
  ds.validate();
  if (spec.train_per_class < 1 ||
      spec.train_per_class >= ds.partition.smallest_class())
    throw std::invalid_argument(
        "split: train_per_class must lie in [1, smallest class size)");

  Rng rng(spec.seed);
  SplitIndices out;
  for (int k = 0; k < ds.partition.class_count; ++k) {
    std::vector<int> idx = ds.partition.members[k];
    rng.shuffle(idx);
    out.train.insert(out.train.end(), idx.begin(),
                     idx.begin() + spec.train_per_class);
    out.test.insert(out.test.end(), idx.begin() + spec.train_per_class,
                    idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

LabeledDataset subset(const LabeledDataset& ds, const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("subset: empty index list");
  const std::vector<int> labels = ds.partition.to_labels(ds.size());
  LabeledDataset out;
  std::vector<int> sub_labels;
  int prev = -1;
  for (int idx : indices) {
    if (idx <= prev || idx >= ds.size())
      throw std::invalid_argument("subset: indices must be ascending and in range");
    prev = idx;
    out.signals.push_back(ds.signals[idx]);
    sub_labels.push_back(labels[idx]);
  }
  out.partition =
      ClassPartition::from_labels(sub_labels, ds.partition.class_count);
  out.validate();
  return out;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds,
                                                const SplitSpec& spec) {
  const SplitIndices idx = split_indices(ds, spec);
  return {subset(ds, idx.train), subset(ds, idx.test)};
}

LabeledDataset synth_dataset(int class_count, int per_class, int length,
                             double separation, double noise,
                             std::uint64_t seed) {
  if (class_count < 1 || per_class < 1 || length < 1)
    throw std::invalid_argument("synth_dataset: counts must be positive");
  if (!(separation >= 0) || !(noise >= 0))
    throw std::invalid_argument("synth_dataset: separation and noise must be >= 0");

  Rng rng(seed);
  LabeledDataset ds;
  std::vector<int> labels;
  for (int k = 0; k < class_count; ++k) {
    const double freq = 2.0 * std::numbers::pi * (k + 1) / length;
    const double phase = 2.0 * std::numbers::pi * k / class_count;
    for (int j = 0; j < per_class; ++j) {
      Signal s;
      s.values.resize(length);
      for (int t = 0; t < length; ++t) {
        const double base =
            0.5 + 0.45 * separation * std::sin(freq * t + phase);
        const double v = base + rng.uniform(-noise, noise);
        s.values[t] = std::clamp(v, 0.0, 1.0);
      }
      ds.signals.push_back(std::move(s));
      labels.push_back(k);
    }
  }
  ds.partition = ClassPartition::from_labels(labels, class_count);
  ds.validate();
  return ds;
}

}  // namespace rescomp
