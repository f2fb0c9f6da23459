#pragma once

#include <Eigen/Core>

namespace rescomp {

struct SpectralOptions {
  double rel_tol = 1e-10;
  // Real-dominant spectra converge well under this cap; oscillating
  // (complex-pair) spectra never converge, so a low cap just hands them to
  // the dense fallback sooner.
  int max_iterations = 1000;
  int dense_fallback_limit = 400;  // largest N for the eigensolver fallback
};

/// Largest |eigenvalue| of a square matrix. Power iteration with a
/// deterministic start vector; falls back to a dense eigensolve when the
/// iteration stalls (complex dominant pairs, tight clusters) and the matrix
/// is small enough, otherwise throws.
double spectral_radius(const Eigen::MatrixXd& m, const SpectralOptions& opt = {});

}  // namespace rescomp
