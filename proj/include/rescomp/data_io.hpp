#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "rescomp/types.hpp"

namespace rescomp {

enum class DatasetFormat { binary, csv };

/// Binary layout (magic RCDS) or label-first CSV; load sniffs the magic
/// bytes. Values must lie in [0, 1]; labels must form K nonempty classes.
LabeledDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path,
                  DatasetFormat format);

struct SplitSpec {
  int train_per_class = 0;  // 0 < train_per_class < smallest class size
  std::uint64_t seed = 0;
};

/// Original dataset indices selected for each side, ascending.
struct SplitIndices {
  std::vector<int> train, test;
};

/// Per-class shuffled draw of train_per_class training signals; the rest
/// test. Deterministic in the seed.
SplitIndices split_indices(const LabeledDataset& ds, const SplitSpec& spec);
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds,
                                                const SplitSpec& spec);

/// Subset of a dataset by original indices (ascending, duplicate-free),
/// with labels carried over.
LabeledDataset subset(const LabeledDataset& ds, const std::vector<int>& indices);

/// Noisy sinusoid classes: class k follows a fixed template whose amplitude
/// scales with `separation`, plus uniform noise of half-width `noise`,
/// clipped to [0, 1].
LabeledDataset synth_dataset(int class_count, int per_class, int length,
                             double separation, double noise,
                             std::uint64_t seed);

}  // namespace rescomp
