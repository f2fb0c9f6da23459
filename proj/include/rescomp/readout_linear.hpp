#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <vector>

#include "rescomp/types.hpp"

namespace rescomp {

/// Ridge readout: one K x N weight matrix per sample time, plus the
/// per-time voting weights used at classification.
struct LinearReadoutModel {
  std::vector<Eigen::MatrixXd> weights;    // per t in omega, each K x N
  SampleTimes omega;
  int class_count = 0;
  double regularization = 0;               // lambda > 0
  Eigen::VectorXd classification_weights;  // omega_t >= 0, default all ones

  int node_count() const {
    return weights.empty() ? 0 : static_cast<int>(weights.front().cols());
  }
  void validate() const;
};

/// Closed-form ridge fit at every sample time. `sampled_states[j]` holds
/// signal j's states, one row per time in omega (|omega| x N); `partition`
/// groups the signal indices into classes.
LinearReadoutModel train_linear(const std::vector<Eigen::MatrixXd>& sampled_states,
                                const ClassPartition& partition, double lambda,
                                const SampleTimes& omega);

struct LinearDecision {
  int class_index = -1;
  Eigen::VectorXd scores;  // summed per-class evidence
};

/// Weighted vote over the per-time readouts; ties go to the smallest index.
LinearDecision classify_linear(const LinearReadoutModel& model,
                               const Eigen::MatrixXd& sampled_states);

void save_linear_model(const LinearReadoutModel& model,
                       const std::filesystem::path& path);
LinearReadoutModel load_linear_model(const std::filesystem::path& path);

}  // namespace rescomp
