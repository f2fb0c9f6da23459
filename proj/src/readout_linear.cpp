#include "rescomp/readout_linear.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "binio.hpp"

namespace rescomp {

void LinearReadoutModel::validate() const {
  const int s = omega.count();
  if (s == 0 || static_cast<int>(weights.size()) != s)
    throw std::invalid_argument("linear model: weight count != |omega|");
  omega.validate();
  if (class_count < 1)
    throw std::invalid_argument("linear model: class_count < 1");
  if (!(regularization > 0))
    throw std::invalid_argument("linear model: lambda must be positive");
  const int n = node_count();
  for (const auto& w : weights) {
    if (w.rows() != class_count || w.cols() != n)
      throw std::invalid_argument("linear model: weight matrix shape mismatch");
    if (!w.allFinite())
      throw std::invalid_argument("linear model: non-finite weight");
  }
  if (static_cast<int>(classification_weights.size()) != s)
    throw std::invalid_argument("linear model: voting weight count != |omega|");
  for (int i = 0; i < s; ++i)
    if (!(classification_weights[i] >= 0) ||
        !std::isfinite(classification_weights[i]))
      throw std::invalid_argument("linear model: voting weights must be >= 0");
}

LinearReadoutModel train_linear(const std::vector<Eigen::MatrixXd>& sampled_states,
                                const ClassPartition& partition, double lambda,
                                const SampleTimes& omega) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw std::invalid_argument("train_linear: lambda must be positive");
  const int j_count = static_cast<int>(sampled_states.size());
  if (j_count == 0) throw std::invalid_argument("train_linear: no signals");
  partition.validate(j_count);
  omega.validate();
  const int s_count = omega.count();
  const int n = static_cast<int>(sampled_states.front().cols());
  for (const auto& m : sampled_states)
    if (m.rows() != s_count || m.cols() != n)
      throw std::invalid_argument("train_linear: state block shape mismatch");

  const int k_count = partition.class_count;

  LinearReadoutModel model;
  model.omega = omega;
  model.class_count = k_count;
  model.regularization = lambda;
  model.classification_weights = Eigen::VectorXd::Ones(s_count);
  model.weights.resize(s_count);

  // Per time t: W(t) = D A' (A A' + lambda I)^-1 with A the N x J state
  // matrix and D the K x J one-hot label matrix. The Gram solve is SPD, so
  // LDLT does; D A' is accumulated directly as per-class column sums.
  Eigen::MatrixXd a(n, j_count);
  Eigen::MatrixXd gram(n, n);
  Eigen::MatrixXd rhs(n, k_count);
  for (int s = 0; s < s_count; ++s) {
    for (int j = 0; j < j_count; ++j)
      a.col(j) = sampled_states[j].row(s).transpose();

    gram.setZero();
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a);
    gram = gram.selfadjointView<Eigen::Lower>();
    gram.diagonal().array() += lambda;

    rhs.setZero();
    for (int k = 0; k < k_count; ++k)
      for (int j : partition.members[k]) rhs.col(k) += a.col(j);

    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("train_linear: ridge solve failed");
    model.weights[s] = ldlt.solve(rhs).transpose();
  }
  return model;
}

LinearDecision classify_linear(const LinearReadoutModel& model,
                               const Eigen::MatrixXd& sampled_states) {
  const int s_count = model.omega.count();
  if (static_cast<int>(model.weights.size()) != s_count || s_count == 0)
    throw std::invalid_argument("classify_linear: malformed model");
  if (sampled_states.rows() != s_count ||
      sampled_states.cols() != model.node_count())
    throw std::invalid_argument("classify_linear: state block shape mismatch");

  LinearDecision d;
  d.scores = Eigen::VectorXd::Zero(model.class_count);
  for (int s = 0; s < s_count; ++s)
    d.scores.noalias() += model.classification_weights[s] *
                          (model.weights[s] * sampled_states.row(s).transpose());

  d.class_index = 0;
  for (int k = 1; k < model.class_count; ++k)
    if (d.scores[k] > d.scores[d.class_index]) d.class_index = k;
  return d;
}

namespace {
constexpr char kLinearMagic[5] = "RCLM";
constexpr std::uint32_t kLinearVersion = 1;
constexpr std::uint32_t kDimCap = 10'000'000;

std::uint32_t checked_dim(std::uint32_t v, const char* what) {
  if (v == 0 || v > kDimCap)
    throw std::runtime_error(std::string("linear model file: bad ") + what);
  return v;
}
}  // namespace

void save_linear_model(const LinearReadoutModel& model,
                       const std::filesystem::path& path) {
  model.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());

  binio::write_magic(os, kLinearMagic);
  binio::write_pod<std::uint32_t>(os, kLinearVersion);
  binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.class_count));
  binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.node_count()));
  binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.omega.count()));
  binio::write_pod<double>(os, model.regularization);
  for (int t : model.omega.times)
    binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(t));
  for (int i = 0; i < model.omega.count(); ++i)
    binio::write_pod<double>(os, model.classification_weights[i]);
  for (const auto& w : model.weights)
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) binio::write_pod<double>(os, w(r, c));
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

LinearReadoutModel load_linear_model(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());

  binio::expect_magic(is, kLinearMagic, "linear model file");
  const auto version = binio::read_pod<std::uint32_t>(is);
  if (version != kLinearVersion)
    throw std::runtime_error("linear model file: unsupported version " +
                             std::to_string(version));

  LinearReadoutModel model;
  model.class_count =
      static_cast<int>(checked_dim(binio::read_pod<std::uint32_t>(is), "class count"));
  const int n =
      static_cast<int>(checked_dim(binio::read_pod<std::uint32_t>(is), "node count"));
  const int s_count =
      static_cast<int>(checked_dim(binio::read_pod<std::uint32_t>(is), "time count"));
  model.regularization = binio::read_pod<double>(is);

  model.omega.times.resize(s_count);
  for (int i = 0; i < s_count; ++i)
    model.omega.times[i] = static_cast<int>(binio::read_pod<std::uint32_t>(is));
  model.classification_weights.resize(s_count);
  for (int i = 0; i < s_count; ++i)
    model.classification_weights[i] = binio::read_pod<double>(is);
  model.weights.assign(s_count, Eigen::MatrixXd(model.class_count, n));
  for (auto& w : model.weights)
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) w(r, c) = binio::read_pod<double>(is);

  binio::expect_eof(is, "linear model file");
  model.validate();
  return model;
}

}  // namespace rescomp
