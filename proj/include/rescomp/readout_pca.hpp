#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <vector>

#include "rescomp/types.hpp"

namespace rescomp {

/// Squared state norms over the sample times: b(i) = ||X(t_i)||^2.
Eigen::VectorXd norm_vector(const Eigen::MatrixXd& sampled_states);

/// First `rank` left singular vectors of B, one column per vector. Column
/// signs follow a fixed convention (largest-magnitude entry positive) so
/// results do not depend on the SVD backend's arbitrary sign choice.
Eigen::MatrixXd principal_subspace(const Eigen::MatrixXd& b, int rank);

/// Per-class principal subspaces of the norm-vector clouds. Classification
/// assigns a vector to the class whose subspace leaves the smallest
/// residual. The default fits subspaces through the origin; `centered`
/// subtracts each class mean first (and keeps it for classification).
struct PcaReadoutModel {
  std::vector<Eigen::MatrixXd> bases;  // per class, |omega| x rank
  std::vector<Eigen::VectorXd> means;  // per class; empty unless centered
  SampleTimes omega;
  int class_count = 0;
  int rank = 0;
  bool centered = false;

  void validate() const;
};

PcaReadoutModel train_pca(const std::vector<Eigen::VectorXd>& norm_vectors,
                          const ClassPartition& partition, int rank,
                          const SampleTimes& omega, bool centered = false);

struct PcaDecision {
  int class_index = -1;
  Eigen::VectorXd residuals;  // squared distance to each class subspace
};

/// Residuals via ||b||^2 - ||U_k' b||^2 (orthonormal bases make the two
/// forms identical); ties go to the smallest class index.
PcaDecision classify_pca(const PcaReadoutModel& model, const Eigen::VectorXd& b);

/// Alternative classification path that materializes the orthogonal
/// projectors I - U_k U_k'. Same decisions, different arithmetic; useful as
/// a cross-check and when |omega| is small.
struct PcaProjectorBackend {
  std::vector<Eigen::MatrixXd> complements;  // per class, |omega| x |omega|
  std::vector<Eigen::VectorXd> means;
  int class_count = 0;
};

PcaProjectorBackend make_projector_backend(const PcaReadoutModel& model);
PcaDecision classify_pca_projector(const PcaProjectorBackend& backend,
                                   const Eigen::VectorXd& b);

void save_pca_model(const PcaReadoutModel& model,
                    const std::filesystem::path& path);
PcaReadoutModel load_pca_model(const std::filesystem::path& path);

}  // namespace rescomp
