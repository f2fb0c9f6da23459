#include "rescomp/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescomp {

void Signal::validate() const {
  if (values.size() == 0) throw std::invalid_argument("signal: empty");
  if (!values.allFinite()) throw std::invalid_argument("signal: non-finite value");
}

ClassPartition ClassPartition::from_labels(const std::vector<int>& labels,
                                           int class_count) {
  if (class_count < 1) throw std::invalid_argument("partition: class_count < 1");
  ClassPartition p;
  p.class_count = class_count;
  p.members.resize(class_count);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int k = labels[i];
    if (k < 0 || k >= class_count)
      throw std::invalid_argument("partition: label " + std::to_string(k) +
                                  " out of range at index " + std::to_string(i));
    p.members[k].push_back(static_cast<int>(i));
  }
  p.validate(static_cast<int>(labels.size()));
  return p;
}

int ClassPartition::total() const {
  int n = 0;
  for (const auto& c : members) n += static_cast<int>(c.size());
  return n;
}

std::vector<int> ClassPartition::to_labels(int dataset_size) const {
  validate(dataset_size);
  std::vector<int> labels(dataset_size, -1);
  for (int k = 0; k < class_count; ++k)
    for (int idx : members[k]) labels[idx] = k;
  return labels;
}

int ClassPartition::smallest_class() const {
  if (members.empty()) return 0;
  std::size_t m = members.front().size();
  for (const auto& c : members) m = std::min(m, c.size());
  return static_cast<int>(m);
}

void ClassPartition::validate(int dataset_size) const {
  if (class_count < 1) throw std::invalid_argument("partition: class_count < 1");
  if (static_cast<int>(members.size()) != class_count)
    throw std::invalid_argument("partition: member-set count != class_count");
  std::vector<char> seen(dataset_size, 0);
  for (int k = 0; k < class_count; ++k) {
    if (members[k].empty())
      throw std::invalid_argument("partition: class " + std::to_string(k) +
                                  " is empty");
    for (int idx : members[k]) {
      if (idx < 0 || idx >= dataset_size)
        throw std::invalid_argument("partition: index out of range");
      if (seen[idx])
        throw std::invalid_argument("partition: index " + std::to_string(idx) +
                                    " appears twice");
      seen[idx] = 1;
    }
  }
  for (int i = 0; i < dataset_size; ++i)
    if (!seen[i])
      throw std::invalid_argument("partition: index " + std::to_string(i) +
                                  " unassigned");
}

void LabeledDataset::validate() const {
  if (signals.empty()) throw std::invalid_argument("dataset: empty");
  const int len = signals.front().length();
  for (const auto& s : signals) {
    s.validate();
    if (s.length() != len)
      throw std::invalid_argument("dataset: signals have differing lengths");
  }
  partition.validate(size());
}

SampleTimes SampleTimes::all(int time_len) {
  if (time_len < 1) throw std::invalid_argument("sample times: time_len < 1");
  SampleTimes st;
  st.times.resize(time_len);
  for (int t = 0; t < time_len; ++t) st.times[t] = t;
  return st;
}

SampleTimes SampleTimes::strided(int stride, int count) {
  if (stride < 1 || count < 1)
    throw std::invalid_argument("sample times: stride and count must be positive");
  SampleTimes st;
  st.times.resize(count);
  for (int r = 0; r < count; ++r) st.times[r] = r * stride;
  return st;
}

void SampleTimes::validate() const {
  if (times.empty()) throw std::invalid_argument("sample times: empty");
  int prev = -1;
  for (int t : times) {
    if (t < 0) throw std::invalid_argument("sample times: negative entry");
    if (t <= prev)
      throw std::invalid_argument("sample times: not strictly increasing");
    prev = t;
  }
}

void SampleTimes::validate(int time_len) const {
  validate();
  if (times.back() >= time_len)
    throw std::invalid_argument("sample times: entry " +
                                std::to_string(times.back()) +
                                " outside signal of length " +
                                std::to_string(time_len));
}

}  // namespace rescomp
