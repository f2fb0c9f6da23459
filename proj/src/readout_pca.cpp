#include "rescomp/readout_pca.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "binio.hpp"

namespace rescomp {

Eigen::VectorXd norm_vector(const Eigen::MatrixXd& sampled_states) {
  if (sampled_states.rows() == 0)
    throw std::invalid_argument("norm_vector: empty state block");
  if (!sampled_states.allFinite())
    throw std::invalid_argument("norm_vector: non-finite state");
  return sampled_states.rowwise().squaredNorm();
}

Eigen::MatrixXd principal_subspace(const Eigen::MatrixXd& b, int rank) {
  const Eigen::Index rows = b.rows(), cols = b.cols();
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("principal_subspace: empty matrix");
  if (rank < 1 || rank > std::min(rows, cols))
    throw std::invalid_argument("principal_subspace: rank out of range");
  if (!b.allFinite())
    throw std::invalid_argument("principal_subspace: non-finite entry");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("principal_subspace: SVD failed");
  Eigen::MatrixXd u = svd.matrixU().leftCols(rank);

  // Deterministic sign: largest-|entry| coordinate (first on ties) positive.
  for (int c = 0; c < rank; ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      const double a = std::abs(u(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (u(best, c) < 0.0) u.col(c) = -u.col(c);
  }
  return u;
}

void PcaReadoutModel::validate() const {
  omega.validate();
  if (class_count < 1 || static_cast<int>(bases.size()) != class_count)
    throw std::invalid_argument("pca model: basis count != class count");
  if (rank < 1) throw std::invalid_argument("pca model: rank < 1");
  const int s = omega.count();
  for (const auto& u : bases) {
    if (u.rows() != s || u.cols() != rank)
      throw std::invalid_argument("pca model: basis shape mismatch");
    if (!u.allFinite())
      throw std::invalid_argument("pca model: non-finite basis entry");
    // Orthonormal columns: U'U = I.
    const Eigen::MatrixXd gram = u.transpose() * u;
    if ((gram - Eigen::MatrixXd::Identity(rank, rank)).cwiseAbs().maxCoeff() >
        1e-8)
      throw std::invalid_argument("pca model: basis columns not orthonormal");
  }
  if (centered) {
    if (static_cast<int>(means.size()) != class_count)
      throw std::invalid_argument("pca model: mean count != class count");
    for (const auto& m : means)
      if (static_cast<int>(m.size()) != s || !m.allFinite())
        throw std::invalid_argument("pca model: malformed class mean");
  } else if (!means.empty()) {
    throw std::invalid_argument("pca model: means present without centering");
  }
}

PcaReadoutModel train_pca(const std::vector<Eigen::VectorXd>& norm_vectors,
                          const ClassPartition& partition, int rank,
                          const SampleTimes& omega, bool centered) {
  const int j_count = static_cast<int>(norm_vectors.size());
  if (j_count == 0) throw std::invalid_argument("train_pca: no vectors");
  partition.validate(j_count);
  omega.validate();
  const int s_count = omega.count();
  for (const auto& v : norm_vectors)
    if (static_cast<int>(v.size()) != s_count)
      throw std::invalid_argument("train_pca: vector length != |omega|");
  if (rank < 1 || rank > s_count || rank > partition.smallest_class())
    throw std::invalid_argument(
        "train_pca: rank must satisfy 1 <= rank <= min(|C_k|, |omega|)");

  PcaReadoutModel model;
  model.omega = omega;
  model.class_count = partition.class_count;
  model.rank = rank;
  model.centered = centered;
  model.bases.resize(partition.class_count);

  for (int k = 0; k < partition.class_count; ++k) {
    const auto& idx = partition.members[k];
    Eigen::MatrixXd b(s_count, static_cast<int>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) b.col(c) = norm_vectors[idx[c]];
    if (centered) {
      Eigen::VectorXd mean = b.rowwise().mean();
      b.colwise() -= mean;
      model.means.push_back(std::move(mean));
    }
    model.bases[k] = principal_subspace(b, rank);
  }
  return model;
}

namespace {

int argmin_residual(const Eigen::VectorXd& residuals) {
  int best = 0;
  for (int k = 1; k < residuals.size(); ++k)
    if (residuals[k] < residuals[best]) best = k;
  return best;
}

}  // namespace

PcaDecision classify_pca(const PcaReadoutModel& model, const Eigen::VectorXd& b) {
  const int s_count = model.omega.count();
  if (static_cast<int>(b.size()) != s_count)
    throw std::invalid_argument("classify_pca: vector length != |omega|");

  PcaDecision d;
  d.residuals.resize(model.class_count);
  for (int k = 0; k < model.class_count; ++k) {
    if (model.centered) {
      const Eigen::VectorXd v = b - model.means[k];
      d.residuals[k] = std::max(
          0.0, v.squaredNorm() - (model.bases[k].transpose() * v).squaredNorm());
    } else {
      d.residuals[k] = std::max(
          0.0, b.squaredNorm() - (model.bases[k].transpose() * b).squaredNorm());
    }
  }
  d.class_index = argmin_residual(d.residuals);
  return d;
}

PcaProjectorBackend make_projector_backend(const PcaReadoutModel& model) {
  model.validate();
  const int s = model.omega.count();
  PcaProjectorBackend backend;
  backend.class_count = model.class_count;
  backend.means = model.means;
  backend.complements.reserve(model.class_count);
  for (const auto& u : model.bases)
    backend.complements.push_back(Eigen::MatrixXd::Identity(s, s) -
                                  u * u.transpose());
  return backend;
}

PcaDecision classify_pca_projector(const PcaProjectorBackend& backend,
                                   const Eigen::VectorXd& b) {
  if (backend.complements.empty() ||
      backend.complements.front().rows() != b.size())
    throw std::invalid_argument("classify_pca_projector: shape mismatch");

  PcaDecision d;
  d.residuals.resize(backend.class_count);
  for (int k = 0; k < backend.class_count; ++k) {
    const Eigen::VectorXd v =
        backend.means.empty() ? b : Eigen::VectorXd(b - backend.means[k]);
    d.residuals[k] = (backend.complements[k] * v).squaredNorm();
  }
  d.class_index = argmin_residual(d.residuals);
  return d;
}

namespace {
constexpr char kPcaMagic[5] = "RCPM";
constexpr std::uint32_t kPcaVersion = 1;
constexpr std::uint32_t kDimCap = 10'000'000;

std::uint32_t checked_dim(std::uint32_t v, const char* what) {
  if (v == 0 || v > kDimCap)
    throw std::runtime_error(std::string("pca model file: bad ") + what);
  return v;
}
}  // namespace

void save_pca_model(const PcaReadoutModel& model,
                    const std::filesystem::path& path) {
  model.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());

  binio::write_magic(os, kPcaMagic);
  binio::write_pod<std::uint32_t>(os, kPcaVersion);
  binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.class_count));
  binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.rank));
  binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(model.omega.count()));
  binio::write_pod<std::uint8_t>(os, model.centered ? 1 : 0);
  for (int t : model.omega.times)
    binio::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(t));
  if (model.centered)
    for (const auto& m : model.means)
      for (int i = 0; i < m.size(); ++i) binio::write_pod<double>(os, m[i]);
  for (const auto& u : model.bases)
    for (int r = 0; r < u.rows(); ++r)
      for (int c = 0; c < u.cols(); ++c) binio::write_pod<double>(os, u(r, c));
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

PcaReadoutModel load_pca_model(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());

  binio::expect_magic(is, kPcaMagic, "pca model file");
  const auto version = binio::read_pod<std::uint32_t>(is);
  if (version != kPcaVersion)
    throw std::runtime_error("pca model file: unsupported version " +
                             std::to_string(version));

  PcaReadoutModel model;
  model.class_count =
      static_cast<int>(checked_dim(binio::read_pod<std::uint32_t>(is), "class count"));
  model.rank =
      static_cast<int>(checked_dim(binio::read_pod<std::uint32_t>(is), "rank"));
  const int s_count =
      static_cast<int>(checked_dim(binio::read_pod<std::uint32_t>(is), "time count"));
  const auto flag = binio::read_pod<std::uint8_t>(is);
  if (flag > 1) throw std::runtime_error("pca model file: bad centering flag");
  model.centered = flag == 1;

  model.omega.times.resize(s_count);
  for (int i = 0; i < s_count; ++i)
    model.omega.times[i] = static_cast<int>(binio::read_pod<std::uint32_t>(is));
  if (model.centered) {
    model.means.assign(model.class_count, Eigen::VectorXd(s_count));
    for (auto& m : model.means)
      for (int i = 0; i < s_count; ++i) m[i] = binio::read_pod<double>(is);
  }
  model.bases.assign(model.class_count, Eigen::MatrixXd(s_count, model.rank));
  for (auto& u : model.bases)
    for (int r = 0; r < u.rows(); ++r)
      for (int c = 0; c < u.cols(); ++c) u(r, c) = binio::read_pod<double>(is);

  binio::expect_eof(is, "pca model file");
  model.validate();
  return model;
}

}  // namespace rescomp
