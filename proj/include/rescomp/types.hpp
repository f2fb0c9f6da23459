#pragma once

#include <Eigen/Core>
#include <vector>

namespace rescomp {

/// One input sequence z(1..T), stored 0-based.
struct Signal {
  Eigen::VectorXd values;

  int length() const { return static_cast<int>(values.size()); }
  void validate() const;  // nonempty, all entries finite
};

/// Disjoint nonempty index sets C_0..C_{K-1} covering a dataset.
struct ClassPartition {
  int class_count = 0;
  std::vector<std::vector<int>> members;

  static ClassPartition from_labels(const std::vector<int>& labels,
                                    int class_count);

  int total() const;
  std::vector<int> to_labels(int dataset_size) const;
  int smallest_class() const;
  void validate(int dataset_size) const;
};

struct LabeledDataset {
  std::vector<Signal> signals;
  ClassPartition partition;

  int size() const { return static_cast<int>(signals.size()); }
  int signal_length() const { return signals.empty() ? 0 : signals.front().length(); }
  void validate() const;  // partition consistent, uniform lengths, finite values
};

/// Readout sample times Omega, 0-based and strictly increasing.
struct SampleTimes {
  std::vector<int> times;

  static SampleTimes all(int time_len);
  /// {0, stride, 2*stride, ...} with `count` entries.
  static SampleTimes strided(int stride, int count);

  int count() const { return static_cast<int>(times.size()); }
  void validate() const;              // nonempty, nonnegative, increasing
  void validate(int time_len) const;  // additionally bounded by time_len
};

}  // namespace rescomp
