#pragma once

#include <Eigen/Core>

#include "rescomp/activation.hpp"
#include "rescomp/rng.hpp"
#include "rescomp/types.hpp"

namespace rescomp {

/// Echo state network X(t) = f(W_in u(t) + W_res X(t-1)), X(-1) = 0.
struct EsnParams {
  Eigen::VectorXd input_weights;     // W_in, N x 1
  Eigen::MatrixXd reservoir_weights; // W_res, N x N with rho(W_res) * L < 1
  Activation activation;

  int node_count() const { return static_cast<int>(input_weights.size()); }
  void validate() const;
};

/// Time-delay reservoir: node 0 computes f(alpha*u(t) + beta*X_{N-1}(t-1)),
/// nodes 1..N-1 shift, all nodes start at 0.
struct TdrParams {
  int node_count = 0;      // N >= 2
  double input_gain = 0;   // alpha > 0
  double attenuation = 0;  // beta in [0, 1/L)
  Activation activation;

  void validate() const;
};

/// +-1 multiplexing mask applied blockwise to a scalar signal.
struct MultiplexMask {
  Eigen::VectorXd values;

  static MultiplexMask random(int length, Rng& rng);
  int length() const { return static_cast<int>(values.size()); }
  void validate() const;
};

/// Row t holds X(t)'; time runs over the full drive horizon.
struct StateTrajectory {
  Eigen::MatrixXd states;  // T x N

  int time_len() const { return static_cast<int>(states.rows()); }
  int node_count() const { return static_cast<int>(states.cols()); }
};

/// Random sparse reservoir: `round(density * N^2)` distinct cells drawn
/// uniformly, values U[-1, 1], rescaled once so the spectral radius equals
/// spectral_target. Draws whose radius is numerically zero are redrawn.
EsnParams make_esn(int node_count, double input_gain, double density,
                   double spectral_target, Activation activation, Rng& rng);

TdrParams make_tdr(int node_count, double input_gain, double attenuation,
                   Activation activation);

/// Blockwise mask expansion: output block k equals raw(k) * mask.
Signal apply_mask(const Signal& raw, const MultiplexMask& mask);

StateTrajectory drive_esn(const EsnParams& p, const Signal& u);
StateTrajectory drive_tdr(const TdrParams& p, const Signal& u);

/// Rows of the trajectory at the given times.
Eigen::MatrixXd sample_states(const StateTrajectory& traj,
                              const SampleTimes& omega);

/// Fused drive + sample; avoids materializing the full trajectory.
Eigen::MatrixXd drive_esn_sampled(const EsnParams& p, const Signal& u,
                                  const SampleTimes& omega);
Eigen::MatrixXd drive_tdr_sampled(const TdrParams& p, const Signal& u,
                                  const SampleTimes& omega);

}  // namespace rescomp
