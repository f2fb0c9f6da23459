#pragma once

// Reference implementations used only by tests. Each one recomputes a
// quantity along a path independent of the library code it checks:
// plain scalar loops for the recurrences, a circular delay buffer for the
// time-delay reservoir, a dense eigensolve for the spectral radius.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "rescomp/activation.hpp"
#include "rescomp/reservoir.hpp"
#include "rescomp/types.hpp"

namespace oracle {

inline double dense_rho(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// X(t) = f(W_in u(t) + W_res X(t-1)) with explicit elementwise loops.
inline Eigen::MatrixXd naive_drive_esn(const rescomp::EsnParams& p,
                                       const rescomp::Signal& u) {
  const int n = p.node_count(), t_len = u.length();
  Eigen::MatrixXd states(t_len, n);
  std::vector<double> x(n, 0.0), next(n);
  for (int t = 0; t < t_len; ++t) {
    for (int i = 0; i < n; ++i) {
      double pre = p.input_weights[i] * u.values[t];
      for (int j = 0; j < n; ++j) pre += p.reservoir_weights(i, j) * x[j];
      next[i] = p.activation(pre);
    }
    x = next;
    for (int i = 0; i < n; ++i) states(t, i) = x[i];
  }
  return states;
}

// Delay line simulated literally: node 0 fires, nodes 1..N-1 shift.
inline Eigen::MatrixXd naive_drive_tdr(const rescomp::TdrParams& p,
                                       const rescomp::Signal& u) {
  const int n = p.node_count, t_len = u.length();
  Eigen::MatrixXd states(t_len, n);
  std::vector<double> x(n, 0.0), next(n);
  for (int t = 0; t < t_len; ++t) {
    next[0] = p.activation(p.input_gain * u.values[t] +
                           p.attenuation * x[n - 1]);
    for (int i = 1; i < n; ++i) next[i] = x[i - 1];
    x = next;
    for (int i = 0; i < n; ++i) states(t, i) = x[i];
  }
  return states;
}

// Minimizes sum_j ||W a_j - d_j||^2 + lambda ||W||_F^2 by accelerated
// gradient descent. The closed-form ridge solution must agree with this
// minimizer; the two share no linear-algebra path.
inline Eigen::MatrixXd ridge_by_descent(const Eigen::MatrixXd& a,  // N x J
                                        const Eigen::MatrixXd& d,  // K x J
                                        double lambda) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double lips = 2.0 * (smax * smax + lambda);   // smoothness
  const double mu = 2.0 * ((a.rows() <= a.cols() ? smin * smin : 0.0) + lambda);
  const double kappa = lips / mu;
  const double beta =
      (std::sqrt(kappa) - 1.0) / (std::sqrt(kappa) + 1.0);  // Nesterov momentum

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d.rows(), a.rows());
  Eigen::MatrixXd w_prev = w, y = w, grad;
  for (int it = 0; it < 500000; ++it) {
    y = w + beta * (w - w_prev);
    grad = 2.0 * ((y * a - d) * a.transpose() + lambda * y);
    w_prev = w;
    w = y - grad / lips;
    grad = 2.0 * ((w * a - d) * a.transpose() + lambda * w);
    if (grad.norm() <= 1e-11 * (1.0 + w.norm())) break;
  }
  return w;
}

// Top-rank eigenvectors of B B' (classical PCA route); returns the
// projector U U' for comparison against the SVD-based subspace.
inline Eigen::MatrixXd pca_projector_by_gram(const Eigen::MatrixXd& b,
                                             int rank) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b * b.transpose());
  // Eigenvalues ascend; take the trailing `rank` columns.
  const Eigen::MatrixXd u =
      es.eigenvectors().rightCols(rank);
  return u * u.transpose();
}

}  // namespace oracle
