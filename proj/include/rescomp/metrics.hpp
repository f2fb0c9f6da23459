#pragma once

#include <Eigen/Core>
#include <ostream>
#include <utility>
#include <vector>

#include "rescomp/reservoir.hpp"
#include "rescomp/types.hpp"

namespace rescomp {

/// Sep(t) = d(t) / (1 + v(t)): mean pairwise distance between class
/// centroids over mean within-class spread. `vector` works on the state
/// vectors themselves, `norm` on their (unsquared) Euclidean norms.
enum class SeparationVariant { vector, norm };

struct SeparationSeries {
  std::vector<double> values;  // one entry per sample time
  SeparationVariant variant = SeparationVariant::vector;
};

/// `sampled_states[j]`: signal j's states, one row per sample time.
SeparationSeries separation_ratio(const std::vector<Eigen::MatrixXd>& sampled_states,
                                  const ClassPartition& partition,
                                  SeparationVariant variant);

double max_separation(const SeparationSeries& series);

enum class ReservoirKind { esn, tdr, none };

/// epsilon(t) / bound(t) for a pair of input signals, one entry per tick.
/// A zero bound (identical inputs) makes the ratio 0 by convention.
struct BoundRatioSeries {
  std::vector<double> ratios;
  ReservoirKind kind = ReservoirKind::esn;
  std::pair<int, int> pair{0, 0};  // caller's signal indices, informational
};

/// Bound: L * dbar * ||W_in|| * (1 - (L rho)^(t+1)) / (1 - L rho), with
/// dbar the largest |u_i - u_j| over the horizon.
BoundRatioSeries esn_bound_ratio(const EsnParams& params, const Signal& ui,
                                 const Signal& uj, std::pair<int, int> tag = {});

/// Bound: alpha * dbar * L * sqrt(N) * (1 - (beta L)^(floor(t/N)+1)) /
/// (1 - beta L).
BoundRatioSeries tdr_bound_ratio(const TdrParams& params, const Signal& ui,
                                 const Signal& uj, std::pair<int, int> tag = {});

/// Two-column CSV (`t,value`), one row per entry, t counted from 0.
void write_series_csv(std::ostream& os, const std::vector<double>& values);

}  // namespace rescomp
