#include "rescomp/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace rescomp {

namespace {

double dense_spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_radius: dense eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& m, const SpectralOptions& opt) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("spectral_radius: matrix not square");
  const Eigen::Index n = m.rows();
  if (n == 0) throw std::invalid_argument("spectral_radius: empty matrix");
  if (!m.allFinite())
    throw std::invalid_argument("spectral_radius: non-finite entry");
  if (n == 1) return std::abs(m(0, 0));

  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  // Deterministic start vector with no structure shared with typical draws.
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
  v.normalize();

  Eigen::VectorXd w(n);
  double prev = -1.0;
  int stable = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    w.noalias() = m * v;
    const double est = w.norm();  // v is unit length
    // Collapse to (numerical) zero: nilpotent-like structure.
    if (est <= scale * 1e-290) return 0.0;
    v = w / est;
    if (std::abs(est - prev) <= opt.rel_tol * est) {
      if (++stable >= 2) return est;
    } else {
      stable = 0;
    }
    prev = est;
  }

  if (n <= opt.dense_fallback_limit) return dense_spectral_radius(m);
  throw std::runtime_error(
      "spectral_radius: power iteration did not converge and matrix is too "
      "large for the dense fallback");
}

}  // namespace rescomp
